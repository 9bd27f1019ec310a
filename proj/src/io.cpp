#include "bikegeo/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "bikegeo/closedform.hpp"
#include "bikegeo/rodshape.hpp"

namespace bikegeo {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json json_vec3(const Vec3& v) {
  return nlohmann::json::array({v.x, v.y, v.z});
}

std::vector<TrackRow> track_rows(const SampledPath& path,
                                 const GeodesicParams& params) {
  const std::vector<double> kappas = signed_kappa_series(path, params);
  const auto& samples = path.samples();
  std::vector<TrackRow> rows;
  rows.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const PhaseState& s = samples[i];
    TrackRow row;
    row.t = s.t;
    row.front = s.front();
    row.back = s.back();
    row.kappa = kappas[i];
    const double ksq = row.kappa * row.kappa;
    row.tau = ksq > 1e-12
                  ? 0.5 * params.b +
                        0.5 * params.b * (params.a * params.a - 1.0) / ksq
                  : 0.5 * params.b;
    rows.push_back(row);
  }
  return rows;
}

std::vector<TrackRow> closed_form_rows(const GeodesicParams& params,
                                       double t_max, double dt_out) {
  if (!(t_max > 0.0) || !(dt_out > 0.0))
    throw DomainError("closed_form_rows: need positive t_max and dt_out");
  std::vector<TrackRow> rows;
  const long n = static_cast<long>(t_max / dt_out);
  for (long i = 0;; ++i) {
    const double t = i <= n ? i * dt_out : t_max;
    const PhaseState s = phase_state_closed(t, params);
    TrackRow row;
    row.t = t;
    row.front = s.front();
    row.back = s.back();
    row.kappa = kappa_closed(t, params);
    row.tau = tau_closed(t, params);
    rows.push_back(row);
    if (t >= t_max) break;
  }
  return rows;
}

void write_track_csv(std::ostream& os, const std::vector<TrackRow>& rows) {
  os << "t,fx,fy,fz,bx,by,bz,kappa,tau\n";
  for (const TrackRow& r : rows) {
    os << format_double(r.t) << ',' << format_double(r.front.x) << ','
       << format_double(r.front.y) << ',' << format_double(r.front.z) << ','
       << format_double(r.back.x) << ',' << format_double(r.back.y) << ','
       << format_double(r.back.z) << ',' << format_double(r.kappa) << ','
       << format_double(r.tau) << '\n';
  }
}

std::vector<TrackRow> read_track_csv(std::istream& is) {
  std::vector<TrackRow> rows;
  std::string line;
  if (!std::getline(is, line))
    throw DomainError("track csv: missing header");
  if (line != "t,fx,fy,fz,bx,by,bz,kappa,tau")
    throw DomainError("track csv: unexpected header: " + line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    double vals[9];
    for (int i = 0; i < 9; ++i) {
      if (!std::getline(ss, field, ','))
        throw DomainError("track csv: short row: " + line);
      vals[i] = std::strtod(field.c_str(), nullptr);
    }
    rows.push_back(TrackRow{vals[0],
                            {vals[1], vals[2], vals[3]},
                            {vals[4], vals[5], vals[6]},
                            vals[7],
                            vals[8]});
  }
  return rows;
}

nlohmann::json monodromy_report(const GeodesicParams& params,
                                const SampledPath* path_for_numeric) {
  nlohmann::json j;
  j["params"] = {{"a", params.a}, {"b", params.b}};
  j["period"] = params.period_T;
  const ScrewMotion closed = monodromy_closed(params);
  j["closed"] = {{"dtheta", closed.delta_theta},
                 {"dtheta_signed", closed.signed_theta},
                 {"dz", closed.delta_z}};
  j["numeric"] = nullptr;
  j["conjecture"] = nullptr;
  if (path_for_numeric != nullptr) {
    const MonodromyExtraction ext =
        extract_monodromy_detailed(*path_for_numeric, params);
    j["numeric"] = {{"dtheta", ext.screw.delta_theta},
                    {"dz", ext.screw.delta_z},
                    {"axis_point", json_vec3(ext.screw.axis_point)},
                    {"axis_dir", json_vec3(ext.screw.axis_dir)},
                    {"residual", ext.registration_rms}};
    if (params.b != 0.0) {
      const ConjectureReport rep = conjecture_check(*path_for_numeric, params);
      j["conjecture"] = {{"angle_I", rep.angle_found},
                         {"angle_predicted", rep.angle_predicted},
                         {"matches", rep.matches}};
    }
  }
  return j;
}

nlohmann::json shoot_report(const FramePlacement& from, const FramePlacement& to,
                            const std::vector<ShootingResult>& results) {
  nlohmann::json j;
  j["from"] = {{"x", json_vec3(from.x)}, {"v", json_vec3(from.v)}};
  j["to"] = {{"x", json_vec3(to.x)}, {"v", json_vec3(to.v)}};
  j["solutions"] = nlohmann::json::array();
  for (const ShootingResult& r : results) {
    j["solutions"].push_back({{"p", json_vec3(r.p)},
                              {"x_dot0", json_vec3(r.x_dot0)},
                              {"duration", r.duration},
                              {"residual", r.residual},
                              {"iterations", r.iterations},
                              {"converged", r.converged}});
  }
  return j;
}

}  // namespace bikegeo
