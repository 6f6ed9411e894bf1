#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "riemannlab/bench.hpp"

namespace riemannlab::bench {

using engine::SolutionField;

namespace {

std::string fmt(double v, int digits) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::vector<PrimitiveState> primitives(const SolutionField& field, const GasModel& gas) {
  std::vector<PrimitiveState> out;
  out.reserve(field.interior().size());
  for (const auto& q : field.interior()) out.push_back(conserved_to_primitive(q, gas));
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::filesystem::filesystem_error("cannot open for writing", path,
                                                     std::make_error_code(std::errc::io_error));
  out << text;
  if (!out) throw std::filesystem::filesystem_error("write failed", path,
                                                     std::make_error_code(std::errc::io_error));
}

nlohmann::ordered_json per_variable(const std::array<double, 3>& v) {
  return {{"rho", v[0]}, {"u", v[1]}, {"p", v[2]}};
}

} // namespace

std::string solution_csv(const SolutionField& field, const SolutionField* reference,
                         const GasModel& gas) {
  const auto num = primitives(field, gas);
  std::vector<PrimitiveState> ref;
  if (reference) ref = primitives(*reference, gas);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  std::ostringstream os;
  os << "x,rho,u,p,rho_exact,u_exact,p_exact\n";
  for (int i = 0; i < field.grid.n_cells(); ++i) {
    const auto& w = num[i];
    const PrimitiveState r = reference ? ref[i] : PrimitiveState{nan, nan, nan};
    os << fmt(field.grid.center(i), 17) << ',' << fmt(w.rho, 17) << ',' << fmt(w.u, 17) << ','
       << fmt(w.p, 17) << ',' << fmt(r.rho, 17) << ',' << fmt(r.u, 17) << ',' << fmt(r.p, 17)
       << '\n';
  }
  return os.str();
}

std::string report_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["case"] = report.case_name;
  j["scheme"] = report.scheme;
  j["n_cells"] = report.n_cells;
  j["cfl"] = report.cfl;
  j["t_end"] = report.t_end;
  j["gamma"] = report.gamma;
  j["reference"] = report.reference;
  if (report.errors) {
    j["errors"] = {{"L1", per_variable(report.errors->l1)},
                   {"L2", per_variable(report.errors->l2)},
                   {"Linf", per_variable(report.errors->linf)}};
  } else {
    j["errors"] = nullptr;
  }
  j["steps"] = report.steps;
  j["wall_seconds"] = report.wall_seconds;
  j["min_dt"] = report.min_dt;
  j["max_dt"] = report.max_dt;
  j["conservation_drift"] = {{"mass", report.conservation_drift[0]},
                             {"momentum", report.conservation_drift[1]},
                             {"energy", report.conservation_drift[2]}};
  return j.dump(2) + "\n";
}

std::string plot_svg(const RunReport& report, const SolutionField& field,
                     const SolutionField* reference, const GasModel& gas) {
  constexpr double width = 900.0;
  constexpr double panel = 260.0;
  constexpr double margin = 50.0;
  const auto num = primitives(field, gas);
  std::vector<PrimitiveState> ref;
  if (reference) ref = primitives(*reference, gas);

  const double x0 = field.grid.x_left();
  const double x1 = field.grid.x_right();
  auto sx = [&](double x) { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << 3 * panel << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const char* names[] = {"rho", "u", "p"};
  auto pick = [](const PrimitiveState& w, int k) { return k == 0 ? w.rho : (k == 1 ? w.u : w.p); };
  for (int k = 0; k < 3; ++k) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& w : num) lo = std::min(lo, pick(w, k)), hi = std::max(hi, pick(w, k));
    for (const auto& w : ref) lo = std::min(lo, pick(w, k)), hi = std::max(hi, pick(w, k));
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double top = k * panel + 25.0;
    const double bottom = (k + 1) * panel - 25.0;
    auto sy = [&](double v) { return bottom - (v - lo) / (hi - lo) * (bottom - top); };

    os << "<g id=\"" << names[k] << "\">\n";
    os << "<rect x=\"" << margin << "\" y=\"" << top << "\" width=\"" << width - 2 * margin
       << "\" height=\"" << bottom - top << "\" fill=\"none\" stroke=\"#888\"/>\n";
    os << "<text x=\"" << margin << "\" y=\"" << top - 6 << "\">" << names[k] << ": "
       << report.case_name << ", " << report.scheme << ", N=" << report.n_cells << "</text>\n";
    os << "<text x=\"4\" y=\"" << top + 10 << "\">" << fmt(hi, 4) << "</text>\n";
    os << "<text x=\"4\" y=\"" << bottom << "\">" << fmt(lo, 4) << "</text>\n";
    if (!ref.empty()) {
      os << "<polyline class=\"reference\" fill=\"none\" stroke=\"black\" points=\"";
      for (int i = 0; i < field.grid.n_cells(); ++i) {
        os << fmt(sx(field.grid.center(i)), 6) << ',' << fmt(sy(pick(ref[i], k)), 6) << ' ';
      }
      os << "\"/>\n";
    }
    os << "<g class=\"numerical\" fill=\"#c0392b\">\n";
    for (int i = 0; i < field.grid.n_cells(); ++i) {
      os << "<circle cx=\"" << fmt(sx(field.grid.center(i)), 6) << "\" cy=\""
         << fmt(sy(pick(num[i], k)), 6) << "\" r=\"1.8\"/>\n";
    }
    os << "</g>\n</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void emit_outputs(const RunReport& report, const SolutionField& field,
                  const SolutionField* reference, const GasModel& gas,
                  const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "solution.csv", solution_csv(field, reference, gas));
  write_file(out_dir / "report.json", report_json(report));
  write_file(out_dir / "plot.svg", plot_svg(report, field, reference, gas));
}

} // namespace riemannlab::bench
