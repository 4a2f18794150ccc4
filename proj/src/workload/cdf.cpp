#include "awafs/workload/cdf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace awafs::workload {

namespace {

void check_points(const std::vector<CdfPoint>& pts, const std::string& where,
                  const std::vector<std::size_t>* lines = nullptr) {
  auto fail = [&](std::size_t i, const std::string& msg) {
    std::string loc = where;
    if (lines && i < lines->size()) loc += ":" + std::to_string((*lines)[i]);
    throw CdfError(loc + ": " + msg);
  };
  if (pts.empty()) fail(0, "no points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].size == 0) fail(i, "sizes must be positive");
    if (!(pts[i].cum_prob >= 0.0 && pts[i].cum_prob <= 1.0 + 1e-12)) fail(i, "cumulative probability outside [0,1]");
    if (i > 0) {
      if (pts[i].size <= pts[i - 1].size) fail(i, "sizes must be strictly increasing");
      if (pts[i].cum_prob < pts[i - 1].cum_prob) fail(i, "cumulative probabilities must be nondecreasing");
    }
  }
  if (std::abs(pts.back().cum_prob - 1.0) > 1e-9) fail(pts.size() - 1, "last cumulative probability must be 1.0");
}

}  // namespace

WorkloadCdf::WorkloadCdf(std::string name, std::vector<CdfPoint> points, Interpolation interp)
    : name_(std::move(name)), points_(std::move(points)), interp_(interp) {
  check_points(points_, name_);
  points_.back().cum_prob = 1.0;
}

WorkloadCdf WorkloadCdf::parse(std::istream& in, const std::string& name, const std::string& origin) {
  std::vector<CdfPoint> pts;
  std::vector<std::size_t> lines;
  Interpolation interp = Interpolation::Linear;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      std::istringstream directive(line.substr(hash + 1));
      std::string tag, key, value;
      if (directive >> tag >> key >> value && tag == "@" && key == "interpolation") {
        if (value == "step") {
          interp = Interpolation::Step;
        } else if (value == "linear") {
          interp = Interpolation::Linear;
        } else {
          throw CdfError(origin + ":" + std::to_string(lineno) + ": unknown interpolation '" + value + "'");
        }
      }
      line.resize(hash);
    }
    std::istringstream fields(line);
    std::string size_tok, prob_tok, extra;
    if (!(fields >> size_tok)) continue;
    if (!(fields >> prob_tok) || (fields >> extra)) {
      throw CdfError(origin + ":" + std::to_string(lineno) + ": expected 'size_bytes cum_prob'");
    }
    try {
      std::size_t used = 0;
      const double size = std::stod(size_tok, &used);
      if (used != size_tok.size() || size < 0 || size != std::floor(size)) throw std::invalid_argument("size");
      const double prob = std::stod(prob_tok, &used);
      if (used != prob_tok.size()) throw std::invalid_argument("prob");
      pts.push_back({static_cast<std::uint64_t>(size), prob});
      lines.push_back(lineno);
    } catch (const std::logic_error&) {
      throw CdfError(origin + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  check_points(pts, origin, &lines);
  return WorkloadCdf(name, std::move(pts), interp);
}

WorkloadCdf load_cdf(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CdfError(path.string() + ": cannot open");
  return WorkloadCdf::parse(in, path.stem().string(), path.string());
}

double WorkloadCdf::cdf(double s) const {
  const auto& p = points_;
  if (s < static_cast<double>(p.front().size)) return 0.0;
  if (s >= static_cast<double>(p.back().size)) return 1.0;
  // First point with size > s; s lies in [prev.size, it.size).
  auto it = std::upper_bound(p.begin(), p.end(), s,
                             [](double v, const CdfPoint& pt) { return v < static_cast<double>(pt.size); });
  const CdfPoint& hi = *it;
  const CdfPoint& lo = *(it - 1);
  if (interp_ == Interpolation::Step) return lo.cum_prob;
  const double frac = (s - static_cast<double>(lo.size)) / static_cast<double>(hi.size - lo.size);
  return lo.cum_prob + (hi.cum_prob - lo.cum_prob) * frac;
}

double WorkloadCdf::quantile(double prob) const {
  const auto& p = points_;
  if (prob <= p.front().cum_prob) return static_cast<double>(p.front().size);
  auto it = std::lower_bound(p.begin(), p.end(), prob,
                             [](const CdfPoint& pt, double v) { return pt.cum_prob < v; });
  if (it == p.end()) return static_cast<double>(p.back().size);
  if (interp_ == Interpolation::Step) return static_cast<double>(it->size);
  const CdfPoint& lo = *(it - 1);
  const CdfPoint& hi = *it;
  const double frac = (prob - lo.cum_prob) / (hi.cum_prob - lo.cum_prob);
  return static_cast<double>(lo.size) + frac * static_cast<double>(hi.size - lo.size);
}

std::uint64_t inverse_sample(const WorkloadCdf& cdf, double u) {
  const double s = std::llround(cdf.quantile(u));
  return static_cast<std::uint64_t>(std::max(1.0, s));
}

double mean_size(const WorkloadCdf& cdf) {
  const auto& p = cdf.points();
  if (cdf.interpolation() == Interpolation::Step) {
    double m = 0, prev = 0;
    for (const auto& pt : p) {
      m += (pt.cum_prob - prev) * static_cast<double>(pt.size);
      prev = pt.cum_prob;
    }
    return m;
  }
  double m = p.front().cum_prob * static_cast<double>(p.front().size);
  for (std::size_t i = 1; i < p.size(); ++i) {
    m += (p[i].cum_prob - p[i - 1].cum_prob) * 0.5 * static_cast<double>(p[i].size + p[i - 1].size);
  }
  return m;
}

}  // namespace awafs::workload
