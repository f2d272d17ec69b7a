#pragma once

#include "groupcut/compendium.hpp"
#include "groupcut/delta_complex.hpp"
#include "groupcut/error.hpp"
#include "groupcut/extremality.hpp"
#include "groupcut/finite_group.hpp"
#include "groupcut/io.hpp"
#include "groupcut/linalg.hpp"
#include "groupcut/minimality.hpp"
#include "groupcut/pwl.hpp"
#include "groupcut/rat.hpp"
#include "groupcut/svg.hpp"
