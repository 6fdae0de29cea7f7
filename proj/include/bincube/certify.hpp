#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "bincube/report.hpp"

namespace bincube {

/// Φ̃(q,u) = q ln cosh u − ln cosh(pu) + ln(p 2^{q−1}/(2q−p)), p = young_endpoint_p(q).
double phi_tilde(double q, double u);
/// Closed-form ∂_qΦ̃, ∂²_qΦ̃ and ∂_u∂_qΦ̃. Need q ∈ [1, 4] and u ≥ 0.
double dq_phi_tilde(double q, double u);
double dqq_phi_tilde(double q, double u);
double duq_phi_tilde(double q, double u);

/// Functions the grid engine knows about. The two defects are 1 − F_q(x) on
/// (q, x) and 1 − G_q(x, y) on (x, y) with q = CertRequest::param; they come
/// without rigorous Lipschitz constants and are always flagged heuristic.
enum class CertFunction { dq_phi_tilde, constant_one, f_defect, g_defect };

std::string_view to_string(CertFunction f);
CertFunction parse_cert_function(std::string_view name);

struct CertRequest {
  CertFunction function = CertFunction::dq_phi_tilde;
  /// q_lo, q_hi, u_lo, u_hi. The first axis is "q" and the second "u"
  /// regardless of what the function calls them.
  std::array<double, 4> rectangle{};
  std::array<double, 2> steps{};
  /// Absent: estimated from node differences (heuristic).
  std::optional<std::array<double, 2>> lipschitz;
  double threshold = 0.0;
  /// Claim being certified: the function exceeds `target` on the rectangle.
  double target = 0.0;
  double pad = 1e-6;
  double param = 0.0;
};

struct GridNode {
  double q = 0.0;
  double u = 0.0;
  double value = 0.0;
};

struct GridCertificate {
  std::string function_id;
  std::array<double, 4> rectangle{};
  std::array<double, 2> steps{};
  std::array<double, 2> lipschitz{};
  double node_threshold = 0.0;
  double target = 0.0;
  double eval_error_bound = 0.0;
  /// threshold − L_q dq/2 − L_u du/2 − pad: certified lower bound on the rectangle.
  double guaranteed_floor = 0.0;
  GridNode worst_node;
  std::optional<GridNode> failing_node;
  std::int64_t nodes_checked = 0;
  bool heuristic = false;
  bool pass = false;
};

/// The instance from the text: ∂_qΦ̃ on [1,4]×[0,3], steps 1/700 and 1/300,
/// Lipschitz constants 7 and 3, threshold 1/50.
CertRequest paper_certificate_request();

/// Evaluates every node of the grid, row by row. Steps must divide the
/// rectangle sides (relative 1e-9). Pass iff every node value − pad exceeds the
/// threshold and the guaranteed floor exceeds the target. NaN at a node throws
/// NumericalFailure; malformed requests throw UsageError.
GridCertificate certify_grid(const CertRequest& req);

/// Sorted keys; doubles as shortest round-trip decimal.
Json to_json(const GridCertificate& c);
std::string canonical_json(const GridCertificate& c);
Report certificate_report(const GridCertificate& c);

/// Max of |∂²_qΦ̃| and |∂_u∂_qΦ̃| over the product grid against the two bounds.
Report lipschitz_bounds_check(std::span<const double> q_grid, std::span<const double> u_grid,
                              double bound_qq = 7.0, double bound_uq = 3.0);

}  // namespace bincube
