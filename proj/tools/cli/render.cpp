#include "render.hpp"

#include <cmath>
#include <cstdio>

#include "rittlab/error.hpp"

namespace rittlab::cli {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);  // no "-0.000000"
  return buf;
}

std::string pt(cplx z) { return fmt(z.real()) + " " + fmt(z.imag()); }

const char* kind_class(const Piece& p) {
  switch (p.kind) {
    case PieceKind::Arc: return "arc";
    case PieceKind::Chord: return "chord";
    default: return "segment";
  }
}

std::string piece_path(const Piece& p) {
  std::string d = "M " + pt(p.at(0.0));
  if (!p.is_arc()) return d + " L " + pt(p.at(1.0));
  const double sweep = p.theta1 - p.theta0;
  // SVG cannot draw a full circle with one arc command.
  if (std::abs(sweep) > 1.999 * kPi) return d + " A " + fmt(p.radius) + " " + fmt(p.radius) + " 0 0 " +
                                             (sweep > 0 ? "1 " : "0 ") + pt(p.at(0.5)) + " A " + fmt(p.radius) +
                                             " " + fmt(p.radius) + " 0 0 " + (sweep > 0 ? "1 " : "0 ") + pt(p.at(1.0));
  return d + " A " + fmt(p.radius) + " " + fmt(p.radius) + " 0 " + (std::abs(sweep) > kPi ? "1 " : "0 ") +
         (sweep > 0 ? "1 " : "0 ") + pt(p.at(1.0));
}

}  // namespace

Scene scene_from(const json& doc) {
  const json& g = doc.is_object() && doc.contains("geometry") ? doc.at("geometry") : doc;
  if (!g.is_object()) throw InputError("geometry must be a JSON object");
  Scene s;
  PeripheralSet e;
  if (g.contains("E")) {
    e = e_from(g.at("E"));
    s.e.assign(e.points().begin(), e.points().end());
  }
  try {
    if (g.contains("stolz"))
      for (const auto& r : g.at("stolz")) s.regions.push_back(boundary_contour(build_stolz(e, r.get<double>())));
    if (g.contains("gamma"))
      for (const auto& c : g.at("gamma"))
        s.contours.push_back(gamma_n(e, c.at("s").get<double>(), c.at("n").get<int>()).contour);
  } catch (const json::exception& ex) {
    throw InputError(std::string("geometry: ") + ex.what());
  }
  if (g.contains("polygons"))
    for (const auto& poly : g.at("polygons")) {
      std::vector<cplx> v;
      for (const auto& x : poly) v.push_back(complex_from(x));
      s.polygons.push_back(std::move(v));
    }
  if (g.contains("eigenvalues"))
    for (const auto& x : g.at("eigenvalues")) s.eigenvalues.push_back(complex_from(x));
  return s;
}

std::string render_svg(const Scene& s) {
  if (s.regions.empty() && s.contours.empty() && s.polygons.empty() && s.eigenvalues.empty())
    throw Error(Errc::EmptyScene, "nothing to draw");

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1024\" height=\"1024\" viewBox=\"-1.3 -1.3 2.6 2.6\">\n";
  out += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"8\" refY=\"5\" markerWidth=\"5\" markerHeight=\"5\" "
         "orient=\"auto\"><polygon points=\"0,0 10,5 0,10\" fill=\"#d62728\"/></marker></defs>\n";
  out += "<style>path{fill:none;stroke-width:0.006}.segment{stroke:#1f77b4}.arc{stroke:#2ca02c}"
         ".chord{stroke:#9467bd;stroke-dasharray:0.02 0.01}.contour{stroke:#d62728}"
         ".polygon{stroke:#ff7f0e;fill:#ff7f0e;fill-opacity:0.12}"
         ".unit{fill:none;stroke:#444;stroke-width:0.004}.eig{fill:#000}.xi{fill:#d62728}</style>\n";
  out += "<rect x=\"-1.3\" y=\"-1.3\" width=\"2.6\" height=\"2.6\" fill=\"#fff\"/>\n";
  out += "<g transform=\"scale(1,-1)\">\n";
  out += "<circle class=\"unit\" cx=\"0\" cy=\"0\" r=\"1\"/>\n";
  for (const auto& poly : s.polygons) {
    if (poly.empty()) continue;
    std::string d = "M " + pt(poly.front());
    for (std::size_t i = 1; i < poly.size(); ++i) d += " L " + pt(poly[i]);
    out += "<path class=\"polygon\" d=\"" + d + " Z\"/>\n";
  }
  for (const auto& c : s.regions)
    for (const auto& p : c.pieces) out += "<path class=\"" + std::string(kind_class(p)) + "\" d=\"" + piece_path(p) + "\"/>\n";
  for (const auto& c : s.contours)
    for (const auto& p : c.pieces)
      out += "<path class=\"contour " + std::string(kind_class(p)) + "\" marker-end=\"url(#arrow)\" d=\"" +
             piece_path(p) + "\"/>\n";
  for (auto z : s.eigenvalues)
    out += "<circle class=\"eig\" cx=\"" + fmt(z.real()) + "\" cy=\"" + fmt(z.imag()) + "\" r=\"0.012\"/>\n";
  for (auto z : s.e)
    out += "<circle class=\"xi\" cx=\"" + fmt(z.real()) + "\" cy=\"" + fmt(z.imag()) + "\" r=\"0.018\"/>\n";
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace rittlab::cli
