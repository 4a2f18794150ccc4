#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace awafs::workload {

class CdfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How the distribution behaves between listed points. Linear spreads the
/// probability mass uniformly over each segment; Step puts it all on the
/// segment's upper size.
enum class Interpolation { Linear, Step };

struct CdfPoint {
  std::uint64_t size = 0;
  double cum_prob = 0;
};

/// Empirical flow-size distribution. Sizes strictly increase, cumulative
/// probabilities are nondecreasing, and the last one is 1. Under Linear
/// interpolation the first point is an atom: P(size = first) = its cum_prob.
class WorkloadCdf {
 public:
  WorkloadCdf(std::string name, std::vector<CdfPoint> points, Interpolation interp = Interpolation::Linear);

  /// Text format: one "size_bytes cum_prob" pair per line, '#' starts a
  /// comment. A comment of the form "#@ interpolation step" selects Step.
  static WorkloadCdf parse(std::istream& in, const std::string& name, const std::string& origin = "<stream>");

  const std::string& name() const { return name_; }
  const std::vector<CdfPoint>& points() const { return points_; }
  Interpolation interpolation() const { return interp_; }
  std::uint64_t min_size() const { return points_.front().size; }
  std::uint64_t max_size() const { return points_.back().size; }

  /// P(size <= s).
  double cdf(double s) const;
  /// Smallest size with cdf(size) >= p.
  double quantile(double p) const;

 private:
  std::string name_;
  std::vector<CdfPoint> points_;
  Interpolation interp_;
};

WorkloadCdf load_cdf(const std::filesystem::path& path);

/// Inverse-transform sample for u in [0, 1), rounded to whole bytes (>= 1).
std::uint64_t inverse_sample(const WorkloadCdf& cdf, double u);

/// Expected flow size in bytes.
double mean_size(const WorkloadCdf& cdf);

}  // namespace awafs::workload
