#include "qso/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "qso/error.hpp"

namespace qso {

namespace {

std::size_t pair_count(int m) { return static_cast<std::size_t>(m) * static_cast<std::size_t>(m + 1) / 2; }

std::string pair_name(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

void check_dim(const CoefficientTensor& t, std::size_t n) {
  if (static_cast<std::size_t>(t.dim()) != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "operator acts on m=" + std::to_string(t.dim()) + ", point has " + std::to_string(n) +
                    " coordinates");
  }
}

}  // namespace

CoefficientTensor make_validated_tensor(int m, std::vector<double> data) {
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const std::size_t base =
          static_cast<std::size_t>(i) * static_cast<std::size_t>(2 * m - i + 1) / 2 + static_cast<std::size_t>(j - i);
      double sum = 0.0;
      for (int k = 0; k < m; ++k) {
        const double v = data[base * static_cast<std::size_t>(m) + static_cast<std::size_t>(k)];
        if (!std::isfinite(v)) {
          throw Error(ErrorCode::NonFiniteValue, "p" + pair_name(i + 1, j + 1) + " has a non-finite entry");
        }
        if (v < 0.0) {
          throw Error(ErrorCode::NegativeCoefficient,
                      "p(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                          ") = " + std::to_string(v));
        }
        sum += v;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "pair " << pair_name(i + 1, j + 1) << " sums to " << sum;
        throw Error(ErrorCode::RowSumNotOne, msg.str());
      }
    }
  }
  return CoefficientTensor(m, std::move(data));
}

std::size_t CoefficientTensor::pair_offset(int i0, int j0) const noexcept {
  const std::size_t pair =
      static_cast<std::size_t>(i0) * static_cast<std::size_t>(2 * m_ - i0 + 1) / 2 + static_cast<std::size_t>(j0 - i0);
  return pair * static_cast<std::size_t>(m_);
}

double CoefficientTensor::at(int i, int j, int k) const {
  if (i < 1 || i > m_ || j < 1 || j > m_ || k < 1 || k > m_) {
    throw Error(ErrorCode::IndexOutOfRange, "coefficient index outside 1.." + std::to_string(m_));
  }
  if (i > j) std::swap(i, j);
  return data_[pair_offset(i - 1, j - 1) + static_cast<std::size_t>(k - 1)];
}

std::span<const double> CoefficientTensor::row(int i, int j) const {
  if (i < 1 || i > m_ || j < 1 || j > m_) {
    throw Error(ErrorCode::IndexOutOfRange, "pair index outside 1.." + std::to_string(m_));
  }
  if (i > j) std::swap(i, j);
  return std::span<const double>(data_).subspan(pair_offset(i - 1, j - 1), static_cast<std::size_t>(m_));
}

void CoefficientTensor::evaluate(std::span<const double> x, std::span<double> out) const {
  check_dim(*this, x.size());
  check_dim(*this, out.size());
  std::fill(out.begin(), out.end(), 0.0);
  const double* p = data_.data();
  for (int i = 0; i < m_; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    for (int j = i; j < m_; ++j, p += m_) {
      if (xi == 0.0) continue;
      const double w = (i == j ? 1.0 : 2.0) * xi * x[static_cast<std::size_t>(j)];
      if (w == 0.0) continue;
      for (int k = 0; k < m_; ++k) out[static_cast<std::size_t>(k)] += w * p[k];
    }
  }
}

CoefficientTensor build_tensor(int m, std::span<const TensorEntry> entries) {
  if (m < 2) throw Error(ErrorCode::DimensionTooSmall, "m must be at least 2");
  std::vector<double> data(pair_count(m) * static_cast<std::size_t>(m), 0.0);
  std::map<std::tuple<int, int, int>, double> seen;
  for (const auto& e : entries) {
    if (e.i < 1 || e.i > m || e.j < 1 || e.j > m || e.k < 1 || e.k > m) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "entry (" + std::to_string(e.i) + "," + std::to_string(e.j) + "," + std::to_string(e.k) +
                      ") outside 1.." + std::to_string(m));
    }
    const int i = std::min(e.i, e.j);
    const int j = std::max(e.i, e.j);
    const auto key = std::make_tuple(i, j, e.k);
    if (auto it = seen.find(key); it != seen.end()) {
      if (it->second != e.value) {
        throw Error(ErrorCode::AsymmetricInput,
                    "conflicting values for p(" + std::to_string(i) + "," + std::to_string(j) + "," +
                        std::to_string(e.k) + ")");
      }
      continue;
    }
    seen.emplace(key, e.value);
    const std::size_t pair = static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(2 * m - i + 2) / 2 +
                             static_cast<std::size_t>(j - i);
    data[pair * static_cast<std::size_t>(m) + static_cast<std::size_t>(e.k - 1)] = e.value;
  }
  return make_validated_tensor(m, std::move(data));
}

bool is_volterra(const CoefficientTensor& t) {
  const int m = t.dim();
  for (int i = 1; i <= m; ++i) {
    for (int j = i; j <= m; ++j) {
      const auto r = t.row(i, j);
      for (int k = 1; k <= m; ++k) {
        if (k != i && k != j && r[static_cast<std::size_t>(k - 1)] > kVolterraTolerance) return false;
      }
    }
  }
  return true;
}

SimplexPoint apply(const CoefficientTensor& t, const SimplexPoint& x) {
  check_dim(t, static_cast<std::size_t>(x.dim()));
  std::vector<double> out(static_cast<std::size_t>(t.dim()));
  t.evaluate(x.coords(), out);
  return SimplexPoint::normalized(std::move(out));
}

CoefficientTensor convex_combine(const CoefficientTensor& a, const CoefficientTensor& b, double w) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "cannot combine m=" + std::to_string(a.dim()) + " with m=" + std::to_string(b.dim()));
  }
  if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorCode::WeightOutOfRange, "weight " + std::to_string(w));
  if (w == 1.0) return a;
  if (w == 0.0) return b;
  const int m = a.dim();
  std::vector<double> data;
  data.reserve(pair_count(m) * static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    for (int j = i; j <= m; ++j) {
      const auto ra = a.row(i, j);
      const auto rb = b.row(i, j);
      for (int k = 0; k < m; ++k) {
        data.push_back(w * ra[static_cast<std::size_t>(k)] + (1.0 - w) * rb[static_cast<std::size_t>(k)]);
      }
    }
  }
  return make_validated_tensor(m, std::move(data));
}

Eigen::MatrixXd jacobian(const CoefficientTensor& t, std::span<const double> x) {
  check_dim(t, x.size());
  const int m = t.dim();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  for (int i = 1; i <= m; ++i) {
    const double xi = x[static_cast<std::size_t>(i - 1)];
    if (xi == 0.0) continue;
    for (int j = 1; j <= m; ++j) {
      const auto r = t.row(i, j);
      for (int k = 0; k < m; ++k) jac(k, j - 1) += 2.0 * r[static_cast<std::size_t>(k)] * xi;
    }
  }
  return jac;
}

namespace {

// In-place step: raw evaluation followed by renormalization.
void step_inplace(const CoefficientTensor& t, std::vector<double>& x, std::vector<double>& scratch) {
  t.evaluate(x, scratch);
  double sum = 0.0;
  for (double v : scratch) sum += v;
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = scratch[k] / sum;
}

}  // namespace

Trajectory iterate(const CoefficientTensor& t, const SimplexPoint& x0, std::int64_t n_steps, std::int64_t stride,
                   std::string label) {
  if (n_steps < 0) throw Error(ErrorCode::InvalidArgument, "n_steps must be nonnegative");
  if (stride < 1) throw Error(ErrorCode::InvalidArgument, "stride must be at least 1");
  check_dim(t, static_cast<std::size_t>(x0.dim()));
  Trajectory traj;
  traj.label = std::move(label);
  traj.stride = stride;
  traj.points.push_back({0, x0});
  std::vector<double> x(x0.coords().begin(), x0.coords().end());
  std::vector<double> scratch(x.size());
  for (std::int64_t n = 1; n <= n_steps; ++n) {
    step_inplace(t, x, scratch);
    if (n % stride == 0 || n == n_steps) traj.points.push_back({n, SimplexPoint::normalized(x)});
  }
  return traj;
}

SimplexPoint iterate_to(const CoefficientTensor& t, const SimplexPoint& x0, std::int64_t n_steps) {
  if (n_steps < 0) throw Error(ErrorCode::InvalidArgument, "n_steps must be nonnegative");
  check_dim(t, static_cast<std::size_t>(x0.dim()));
  std::vector<double> x(x0.coords().begin(), x0.coords().end());
  std::vector<double> scratch(x.size());
  for (std::int64_t n = 0; n < n_steps; ++n) step_inplace(t, x, scratch);
  return SimplexPoint::normalized(std::move(x));
}

std::vector<SimplexPoint> cesaro_means(const CoefficientTensor& t, const SimplexPoint& x0,
                                       std::span<const std::int64_t> checkpoints) {
  check_dim(t, static_cast<std::size_t>(x0.dim()));
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    if (checkpoints[c] < 1 || (c > 0 && checkpoints[c] <= checkpoints[c - 1])) {
      throw Error(ErrorCode::InvalidArgument, "checkpoints must be positive and strictly increasing");
    }
  }
  const std::size_t m = static_cast<std::size_t>(t.dim());
  std::vector<double> x(x0.coords().begin(), x0.coords().end());
  std::vector<double> scratch(m);
  // Neumaier-compensated running sum of x^(0..n-1).
  std::vector<double> sum(m, 0.0), comp(m, 0.0);
  std::vector<SimplexPoint> means;
  means.reserve(checkpoints.size());
  std::size_t next = 0;
  std::int64_t n = 0;
  while (next < checkpoints.size()) {
    for (std::size_t k = 0; k < m; ++k) {
      const double s = sum[k] + x[k];
      comp[k] += std::abs(sum[k]) >= std::abs(x[k]) ? (sum[k] - s) + x[k] : (x[k] - s) + sum[k];
      sum[k] = s;
    }
    ++n;
    if (n == checkpoints[next]) {
      std::vector<double> mean(m);
      for (std::size_t k = 0; k < m; ++k) mean[k] = (sum[k] + comp[k]) / static_cast<double>(n);
      means.push_back(SimplexPoint::normalized(std::move(mean)));
      ++next;
    }
    if (next < checkpoints.size()) step_inplace(t, x, scratch);
  }
  return means;
}

CoefficientTensor read_tensor(std::istream& in) {
  std::string line;
  int line_no = 0;
  int m = 0;
  std::vector<TensorEntry> entries;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::MalformedSyntax, "line " + std::to_string(line_no) + ": " + why);
    };
    if (m == 0) {
      std::string keyword;
      if (!(fields >> keyword >> m) || keyword != "m") fail("expected 'm <int>' header");
      if (m < 2) throw Error(ErrorCode::DimensionTooSmall, "m must be at least 2");
    } else {
      TensorEntry e;
      if (!(fields >> e.i >> e.j >> e.k >> e.value)) fail("expected 'i j k value'");
      if (e.i > e.j) fail("entries must satisfy i <= j");
      entries.push_back(e);
    }
    std::string rest;
    if (fields >> rest) fail("trailing characters");
  }
  if (m == 0) throw Error(ErrorCode::MalformedSyntax, "missing 'm <int>' header");
  return build_tensor(m, entries);
}

CoefficientTensor read_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open tensor file " + path);
  return read_tensor(in);
}

void write_tensor(std::ostream& out, const CoefficientTensor& t) {
  const int m = t.dim();
  char buf[64];
  out << "m " << m << '\n';
  for (int i = 1; i <= m; ++i) {
    for (int j = i; j <= m; ++j) {
      const auto r = t.row(i, j);
      for (int k = 1; k <= m; ++k) {
        const double v = r[static_cast<std::size_t>(k - 1)];
        if (v == 0.0) continue;
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << i << ' ' << j << ' ' << k << ' ' << buf << '\n';
      }
    }
  }
}

}  // namespace qso
