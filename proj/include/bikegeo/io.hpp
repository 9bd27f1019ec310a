#ifndef BIKEGEO_IO_HPP
#define BIKEGEO_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "bikegeo/dynamics.hpp"
#include "bikegeo/params.hpp"
#include "bikegeo/shooting.hpp"
#include "bikegeo/transforms.hpp"

namespace bikegeo {

// One row of the track CSV: header t,fx,fy,fz,bx,by,bz,kappa,tau, floats
// printed with 17 significant digits (lossless binary64 round trip).
struct TrackRow {
  double t = 0.0;
  Vec3 front;
  Vec3 back;
  double kappa = 0.0;
  double tau = 0.0;
};

std::vector<TrackRow> track_rows(const SampledPath& path,
                                 const GeodesicParams& params);

// Closed-form rows in the axis frame; back track recovered from the
// Killing field via v = (K x r)/|r|^2.
std::vector<TrackRow> closed_form_rows(const GeodesicParams& params,
                                       double t_max, double dt_out);

void write_track_csv(std::ostream& os, const std::vector<TrackRow>& rows);
std::vector<TrackRow> read_track_csv(std::istream& is);

// Machine-diffable monodromy report:
//   {params:{a,b}, period, closed:{dtheta,dz},
//    numeric:{dtheta,dz,axis_point,axis_dir,residual},
//    conjecture:{angle_I, matches}}
// `numeric` and `conjecture` are null when not computed (planar geodesics
// have no conjecture entry; the caller may skip extraction).
nlohmann::json monodromy_report(const GeodesicParams& params,
                                const SampledPath* path_for_numeric);

nlohmann::json shoot_report(const FramePlacement& from, const FramePlacement& to,
                            const std::vector<ShootingResult>& results);

nlohmann::json json_vec3(const Vec3& v);

// Locale-independent float -> shortest-lossless string (17 significant
// digits) used by every writer.
std::string format_double(double x);

}  // namespace bikegeo

#endif  // BIKEGEO_IO_HPP
