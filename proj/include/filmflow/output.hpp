#ifndef FILMFLOW_OUTPUT_HPP_
#define FILMFLOW_OUTPUT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "filmflow/diagnostics.hpp"
#include "filmflow/dynamics.hpp"
#include "filmflow/fields.hpp"
#include "filmflow/residuals.hpp"

namespace filmflow {

/// 17 significant digits, '.' decimal separator, locale independent.
std::string format_double(double value);

/// Write via a temporary sibling and rename. Parent directories are created.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// tau,norm_l2,norm_hs,mean,min,max with norm_hs the Sobolev norm of order s.
std::string trajectory_csv(const Trajectory& traj, double s = 1.0);

/// n,re,im for n = -N/2+1 .. N/2.
std::string spectrum_csv(const SurfaceState& state);

/// x,y,u,v,p, y outer.
std::string field_csv(const FieldGrid& field);

/// 32-byte header "FILMFLOW-FIELD v1 N=<N> M=<M>" padded with spaces and
/// ending in '\n', then (M+1)*N little-endian doubles, y outer.
std::string field_binary(const FieldGrid& field, FieldComponent component);

struct BinaryField {
  int n = 0;
  int m = 0;
  std::vector<double> values;
};
BinaryField parse_field_binary(const std::string& bytes);

/// delta,psi1,psi2,phi1,phi2,phi3 (raw brace norms).
std::string order_csv(const OrderReport& report);
/// {regime, variant, slopes, targets, thresholds, pass} as JSON text.
std::string order_summary_json(const OrderReport& report);

/// tau,h_l2,u_w,v_w,p_w,d_value
std::string difference_csv(const std::vector<DifferenceReport>& reports);

}  // namespace filmflow

#endif  // FILMFLOW_OUTPUT_HPP_
