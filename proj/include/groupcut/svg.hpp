#pragma once

// SVG drawings: the two-dimensional complex ΔP with additive faces and
// violations, and plain function graphs. Coordinates are computed exactly
// and truncated to six decimals.

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "groupcut/delta_complex.hpp"
#include "groupcut/minimality.hpp"
#include "groupcut/pwl.hpp"
#include "groupcut/rat.hpp"

namespace groupcut {

namespace svg {

inline constexpr int kDigits = 6;
inline const char* const kAdditive = "#8fd18f";
inline const char* const kPlain = "#ffffff";
inline const char* const kEdge = "#9a9a9a";
inline const char* const kSymmetry = "#1f7a1f";
inline const char* const kViolation = "#d62728";
inline const char* const kShadow = "#b0b0b0";
inline const char* const kGraph = "#1f3f9f";

inline std::string num(const Rat& r) { return r.to_decimal(kDigits); }

inline std::string header(long width, long height) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
  return os.str();
}

}  // namespace svg

/// Layout of the square diagram: the unit square is drawn at (left, top)
/// with side `side` pixels, y pointing up.
struct DiagramLayout {
  long side = 480;
  long left = 150;
  long top = 150;
  long margin = 40;

  long width() const { return left + side + margin; }
  long height() const { return top + side + margin; }
  Rat px(const Rat& x) const { return Rat(left) + Rat(side) * x; }
  Rat py(const Rat& y) const { return Rat(top) + Rat(side) * (Rat(1) - y); }
};

/// ΔP over [0, 1]^2: one polygon (class "face") per two-dimensional face
/// piece in the square, additive faces filled green, the line x + y = f
/// (mod 1) drawn heavy, red markers at vertices with a negative Δπ limit and
/// at the minimality witness, projections of additive 2-faces on the
/// borders, and the graph of π along the top and left.
inline std::string plot_2d_diagram(const PwlPeriodic& fn, const AdditivityReport& rep,
                                   const MinimalityVerdict* verdict = nullptr, const DiagramLayout& L = {}) {
  using svg::num;
  std::ostringstream os;
  os << svg::header(L.width(), L.height());
  os << "<defs><clipPath id=\"square\"><rect x=\"" << L.left << "\" y=\"" << L.top << "\" width=\"" << L.side
     << "\" height=\"" << L.side << "\"/></clipPath></defs>\n";

  std::set<std::size_t> additive(rep.additive.begin(), rep.additive.end());

  os << "<g clip-path=\"url(#square)\" stroke=\"" << svg::kEdge << "\" stroke-width=\"0.5\">\n";
  for (std::size_t i = 0; i < rep.faces.size(); ++i) {
    const auto& face = rep.faces[i];
    if (face.dim != 2) continue;
    for (int dx = 0; dx >= -1; --dx) {
      for (int dy = 0; dy >= -1; --dy) {
        Rat sx(dx), sy(dy);
        Rat minx = face.p1.lo + sx, maxx = face.p1.hi + sx, miny = face.p2.lo + sy, maxy = face.p2.hi + sy;
        if (!(minx < Rat(1) && maxx > Rat(0) && miny < Rat(1) && maxy > Rat(0))) continue;
        os << "<polygon class=\"face\" fill=\"" << (additive.count(i) ? svg::kAdditive : svg::kPlain) << "\" points=\"";
        for (std::size_t k = 0; k < face.vertices.size(); ++k) {
          if (k) os << ' ';
          os << num(L.px(face.vertices[k].x + sx)) << ',' << num(L.py(face.vertices[k].y + sy));
        }
        os << "\"/>\n";
      }
    }
  }
  os << "</g>\n";

  // Breakpoint lines x = b, y = b, x + y = b (mod 1).
  os << "<g class=\"grid\" stroke=\"" << svg::kEdge << "\" stroke-width=\"1\" fill=\"none\">\n";
  auto line = [&](const Rat& x1, const Rat& y1, const Rat& x2, const Rat& y2) {
    os << "<line x1=\"" << num(L.px(x1)) << "\" y1=\"" << num(L.py(y1)) << "\" x2=\"" << num(L.px(x2)) << "\" y2=\""
       << num(L.py(y2)) << "\"/>\n";
  };
  for (const auto& b : fn.breakpoints()) {
    line(b, Rat(0), b, Rat(1));
    line(Rat(0), b, Rat(1), b);
    if (!b.is_zero()) line(Rat(0), b, b, Rat(0));
    line(b, Rat(1), Rat(1), b);
  }
  os << "</g>\n";

  const Rat& f = fn.f();
  os << "<g class=\"symmetry\" stroke=\"" << svg::kSymmetry << "\" stroke-width=\"3\">\n";
  line(Rat(0), f, f, Rat(0));
  line(f, Rat(1), Rat(1), f);
  os << "</g>\n";

  // Projection shadows: p1 above, p2 left, p3 below and right.
  os << "<g class=\"shadow\" fill=\"" << svg::kShadow << "\" stroke=\"none\">\n";
  auto hband = [&](const Interval& iv, long y) {
    for (const auto& part : merge_mod_one({iv}))
      os << "<rect x=\"" << num(L.px(part.lo)) << "\" y=\"" << y << "\" width=\"" << num(Rat(L.side) * (part.hi - part.lo))
         << "\" height=\"12\"/>\n";
  };
  auto vband = [&](const Interval& iv, long x) {
    for (const auto& part : merge_mod_one({iv}))
      os << "<rect x=\"" << x << "\" y=\"" << num(L.py(part.hi)) << "\" width=\"12\" height=\""
         << num(Rat(L.side) * (part.hi - part.lo)) << "\"/>\n";
  };
  for (auto i : rep.additive) {
    const auto& face = rep.faces[i];
    if (face.dim != 2) continue;
    hband(face.p1, L.top - 20);
    vband(face.p2, L.left - 20);
    hband(face.p3, L.top + L.side + 8);
    vband(face.p3, L.left + L.side + 8);
  }
  os << "</g>\n";

  // Graph of π along the top (over x) and the left (over y).
  Rat vmax(1);
  for (const auto& t : fn.limits()) vmax = max(vmax, max(t.left, max(t.value, t.right)));
  long strip = 90;
  auto top_y = [&](const Rat& v) { return Rat(L.top - 30) - Rat(strip) * v / vmax; };
  auto left_x = [&](const Rat& v) { return Rat(L.left - 30) - Rat(strip) * v / vmax; };
  os << "<g class=\"graph\" stroke=\"" << svg::kGraph << "\" stroke-width=\"1.5\" fill=\"none\">\n";
  for (std::size_t i = 0; i < fn.size(); ++i) {
    Rat a = fn.breakpoints()[i], b = fn.piece_end(i);
    Rat va = fn.limits()[i].right, vb = fn.limit(b, Side::Left);
    os << "<line x1=\"" << num(L.px(a)) << "\" y1=\"" << num(top_y(va)) << "\" x2=\"" << num(L.px(b)) << "\" y2=\""
       << num(top_y(vb)) << "\"/>\n";
    os << "<line x1=\"" << num(left_x(va)) << "\" y1=\"" << num(L.py(a)) << "\" x2=\"" << num(left_x(vb)) << "\" y2=\""
       << num(L.py(b)) << "\"/>\n";
  }
  os << "</g>\n";

  // Violations.
  std::set<Point2> marks;
  for (const auto& face : rep.faces)
    for (const auto& v : face.vertices)
      if (delta_pi_limit(fn, face, v).sign() < 0) marks.insert({v.x.frac(), v.y.frac()});
  if (verdict && verdict->witness && verdict->witness->vertex)
    marks.insert({verdict->witness->vertex->x.frac(), verdict->witness->vertex->y.frac()});
  os << "<g class=\"violations\" fill=\"" << svg::kViolation << "\">\n";
  for (const auto& m : marks)
    os << "<circle class=\"violation\" cx=\"" << num(L.px(m.x)) << "\" cy=\"" << num(L.py(m.y)) << "\" r=\"4\"/>\n";
  os << "</g>\n";

  os << "<rect x=\"" << L.left << "\" y=\"" << L.top << "\" width=\"" << L.side << "\" height=\"" << L.side
     << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  os << "</svg>\n";
  return os.str();
}

/// Graph of fn over [0, 1]. Continuous runs are polylines; at a jump the
/// value gets a filled dot and each differing one-sided limit an open circle.
inline std::string plot_function(const PwlPeriodic& fn) {
  using svg::num;
  const long width = 640, height = 400, pad = 40;
  Rat vmin(0), vmax(1);
  for (const auto& t : fn.limits()) {
    vmin = min(vmin, min(t.left, min(t.value, t.right)));
    vmax = max(vmax, max(t.left, max(t.value, t.right)));
  }
  auto px = [&](const Rat& x) { return Rat(pad) + Rat(width - 2 * pad) * x; };
  auto py = [&](const Rat& v) { return Rat(height - pad) - Rat(height - 2 * pad) * (v - vmin) / (vmax - vmin); };

  std::ostringstream os;
  os << svg::header(width, height);
  os << "<g class=\"axes\" stroke=\"#000000\" stroke-width=\"1\">\n"
     << "<line x1=\"" << pad << "\" y1=\"" << num(py(Rat(0))) << "\" x2=\"" << width - pad << "\" y2=\"" << num(py(Rat(0)))
     << "\"/>\n"
     << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << height - pad << "\"/>\n"
     << "</g>\n";

  os << "<g class=\"graph\" stroke=\"" << svg::kGraph << "\" stroke-width=\"2\" fill=\"none\">\n";
  std::vector<std::pair<Rat, Rat>> run;
  auto flush = [&] {
    if (run.size() < 2) {
      run.clear();
      return;
    }
    os << "<polyline points=\"";
    for (std::size_t k = 0; k < run.size(); ++k) {
      if (k) os << ' ';
      os << num(px(run[k].first)) << ',' << num(py(run[k].second));
    }
    os << "\"/>\n";
    run.clear();
  };
  for (std::size_t i = 0; i < fn.size(); ++i) {
    Rat a = fn.breakpoints()[i], b = fn.piece_end(i);
    if (!fn.limits()[i].continuous()) flush();
    if (run.empty()) run.emplace_back(a, fn.limits()[i].right);
    run.emplace_back(b, fn.limit(b, Side::Left));
  }
  flush();
  os << "</g>\n";

  os << "<g class=\"jumps\" stroke=\"" << svg::kGraph << "\" stroke-width=\"1.5\">\n";
  auto dot = [&](const Rat& x, const Rat& v, bool open) {
    os << "<circle class=\"" << (open ? "open" : "closed") << "\" cx=\"" << num(px(x)) << "\" cy=\"" << num(py(v))
       << "\" r=\"4\" fill=\"" << (open ? "#ffffff" : svg::kGraph) << "\"/>\n";
  };
  for (std::size_t i = 0; i < fn.size(); ++i) {
    const auto& t = fn.limits()[i];
    if (t.continuous()) continue;
    Rat x = fn.breakpoints()[i];
    if (t.right != t.value) dot(x, t.right, true);
    dot(x, t.value, false);
    Rat xl = x.is_zero() ? Rat(1) : x;
    if (t.left != t.value) dot(xl, t.left, true);
    if (x.is_zero()) dot(xl, t.value, false);
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace groupcut
