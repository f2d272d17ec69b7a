// groupcut: command-line front end. Data goes to stdout (or -o), logs and
// usage to stderr. Exit 0 on a computed result, 1 on bad input, 2 on an
// internal error.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "groupcut/groupcut.hpp"

using namespace groupcut;

namespace {

// Collects trailing "--key value" / "--key=value" pairs left over by CLI11.
// Bare arguments go to `positional` when given, otherwise they are errors.
Params extra_params(const std::vector<std::string>& extras, std::vector<std::string>* positional = nullptr) {
  Params p;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& a = extras[i];
    if (a.rfind("--", 0) != 0) {
      if (!positional) throw InputError("unexpected argument '" + a + "'");
      positional->push_back(a);
      continue;
    }
    std::string key = a.substr(2);
    std::string value;
    if (auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else {
      if (i + 1 >= extras.size()) throw InputError("missing value for --" + key);
      value = extras[++i];
    }
    if (!p.emplace(key, value).second) throw InputError("parameter --" + key + " given twice");
  }
  return p;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
}

PwlPeriodic load_fn(const std::string& path) { return pwl_from_json(parse_json_text(read_file(path), path)); }

FiniteGroupFn load_finite(const std::string& path) { return finite_from_json(parse_json_text(read_file(path), path)); }

void check_threads_env() {
  const char* t = std::getenv("GROUPCUT_THREADS");
  if (!t) return;
  std::string s(t);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || std::stol(s) < 1)
    throw InputError("GROUPCUT_THREADS must be a positive integer");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact minimality and extremality tests for one-row group relaxation functions", "groupcut"};
  app.require_subcommand(1);
  std::string out;

  auto* construct_cmd = app.add_subcommand("construct", "Build a registered function family");
  std::string family;
  construct_cmd->add_option("name", family, "Family name (see `groupcut list`)")->required();
  construct_cmd->add_option("-o,--output", out, "Output file");
  construct_cmd->allow_extras();

  auto* list_cmd = app.add_subcommand("list", "List registered families");

  auto* test_cmd = app.add_subcommand("test", "Decide a property of a function");
  test_cmd->require_subcommand(1);
  std::string input;
  long oversampling = 3;
  std::string certificate_out;
  auto* min_cmd = test_cmd->add_subcommand("minimality", "Minimality by the vertex test");
  min_cmd->add_option("file", input, "Function JSON")->required();
  auto* ext_cmd = test_cmd->add_subcommand("extremality", "Extremality by oversampled restriction");
  ext_cmd->add_option("file", input, "Function JSON")->required();
  ext_cmd->add_option("--oversampling", oversampling, "Oversampling factor m >= 3")->capture_default_str();
  ext_cmd->add_option("--certificate", certificate_out, "Write the perturbation certificate here");
  auto* facet_cmd = test_cmd->add_subcommand("facetness", "Facetness (same decision as extremality)");
  facet_cmd->add_option("file", input, "Function JSON")->required();
  facet_cmd->add_option("--oversampling", oversampling, "Oversampling factor m >= 3")->capture_default_str();
  facet_cmd->add_option("--certificate", certificate_out, "Write the perturbation certificate here");
  auto* fmin_cmd = test_cmd->add_subcommand("finite-minimality", "Minimality on the cyclic group");
  fmin_cmd->add_option("file", input, "Finite function JSON")->required();
  auto* fext_cmd = test_cmd->add_subcommand("finite-extremality", "Extremality on the cyclic group");
  fext_cmd->add_option("file", input, "Finite function JSON")->required();

  auto* restrict_cmd = app.add_subcommand("restrict", "Restrict to the grid (1/(mq))Z");
  long q = 0;
  long m = 1;
  restrict_cmd->add_option("file", input, "Function JSON")->required();
  restrict_cmd->add_option("--q", q, "Grid denominator")->required();
  restrict_cmd->add_option("--oversampling", m, "Oversampling factor")->capture_default_str();
  restrict_cmd->add_option("-o,--output", out, "Output file");

  auto* interp_cmd = app.add_subcommand("interpolate", "Continuous interpolation of a finite function");
  interp_cmd->add_option("file", input, "Finite function JSON")->required();
  interp_cmd->add_option("-o,--output", out, "Output file");

  auto* apply_cmd = app.add_subcommand("apply", "Apply a procedure to function files");
  std::string procedure;
  std::vector<std::string> files;
  apply_cmd->add_option("procedure", procedure,
                        "affine_combine | multiplicative_homomorphism | automorphism | projected_sequential_merge | "
                        "two_slope_fill_in")
      ->required();
  apply_cmd->add_option("-o,--output", out, "Output file");
  apply_cmd->allow_extras();
  apply_cmd->footer("Input files and --key value parameters follow the procedure name.");

  auto* plot_cmd = app.add_subcommand("plot", "Draw a function or its complex as SVG");
  std::string diagram = "function";
  plot_cmd->add_option("file", input, "Function JSON")->required();
  plot_cmd->add_option("--diagram", diagram, "function | 2d")->check(CLI::IsMember({"function", "2d"}))->capture_default_str();
  plot_cmd->add_option("-o,--output", out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    check_threads_env();
    if (*construct_cmd) {
      emit(serialize(construct(family, extra_params(construct_cmd->remaining()))), out);
    } else if (*list_cmd) {
      Json arr = Json::array();
      for (const auto& e : registry()) {
        Json j;
        j["name"] = e.name;
        j["constructible"] = e.constructible();
        j["parameters"] = e.parameters;
        j["provenance"] = e.provenance;
        j["expectation"] = e.constructible() ? e.expectation : std::string(kStubMessage);
        arr.push_back(std::move(j));
      }
      Json doc;
      doc["schema_version"] = kSchemaVersion;
      doc["families"] = std::move(arr);
      emit(dump(doc), out);
    } else if (*min_cmd) {
      emit(dump(to_json(minimality_test(load_fn(input)))), "");
    } else if (*ext_cmd || *facet_cmd) {
      PwlPeriodic fn = load_fn(input);
      ExtremalityVerdict v = *ext_cmd ? extremality_test(fn, oversampling) : facetness_test(fn, oversampling);
      Json j = to_json(v);
      if (*facet_cmd) j["test"] = "facetness";
      if (!certificate_out.empty()) {
        if (v.certificate)
          write_file(certificate_out, dump(to_json(*v.certificate)));
        else
          std::cerr << "extreme: no certificate written\n";
      }
      emit(dump(j), "");
    } else if (*fmin_cmd) {
      Json j = to_json(finite_minimality_test(load_finite(input)));
      j["test"] = "finite_minimality";
      emit(dump(j), "");
    } else if (*fext_cmd) {
      emit(dump(to_json(finite_extremality_test(load_finite(input)))), "");
    } else if (*restrict_cmd) {
      emit(dump(to_json(restrict_to_finite_group(load_fn(input), q, m))), out);
    } else if (*interp_cmd) {
      emit(serialize(interpolate_to_infinite_group(load_finite(input))), out);
    } else if (*apply_cmd) {
      Params p = extra_params(apply_cmd->remaining(), &files);
      auto need = [&](std::size_t k) {
        if (files.size() != k) throw InputError(procedure + " takes " + std::to_string(k) + " input file(s)");
      };
      PwlPeriodic result = [&]() -> PwlPeriodic {
        if (procedure == "affine_combine") {
          need(2);
          return affine_combine(detail::rat_param(p, "a"), load_fn(files[0]), detail::rat_param(p, "b"), load_fn(files[1]));
        }
        if (procedure == "multiplicative_homomorphism") {
          need(1);
          return precompose_scale(load_fn(files[0]), detail::long_param(p, "lambda"));
        }
        if (procedure == "automorphism") {
          need(1);
          return precompose_scale(load_fn(files[0]), -1);
        }
        if (procedure == "projected_sequential_merge") {
          need(1);
          return projected_sequential_merge(load_fn(files[0]), detail::long_param(p, "n"));
        }
        if (procedure == "two_slope_fill_in") {
          need(1);
          return two_slope_fill_in(load_finite(files[0]), detail::rat_param(p, "s_plus"), detail::rat_param(p, "s_minus"));
        }
        throw InputError("unknown procedure '" + procedure + "'");
      }();
      emit(serialize(result), out);
    } else if (*plot_cmd) {
      PwlPeriodic fn = load_fn(input);
      if (diagram == "2d") {
        MinimalityVerdict v = minimality_test(fn);
        emit(plot_2d_diagram(fn.refined({fn.f()}), additivity_report(fn.refined({fn.f()})), &v), out);
      } else {
        emit(plot_function(fn), out);
      }
    }
    return 0;
  } catch (const InputError& e) {
    std::cout << dump(error_json(e.what(), "input"));
    return 1;
  } catch (const CapacityError& e) {
    std::cout << dump(error_json(e.what(), "capacity"));
    return 1;
  } catch (const std::exception& e) {
    std::cout << dump(error_json(e.what(), "internal"));
    return 2;
  }
}
