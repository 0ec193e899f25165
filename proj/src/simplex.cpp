#include "qso/simplex.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

#include "qso/error.hpp"

namespace qso {

namespace {

std::vector<double> clamp_and_divide(std::vector<double> coords) {
  double sum = 0.0;
  for (double& c : coords) {
    if (c < 0.0) c = 0.0;
    sum += c;
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw Error(ErrorCode::SumOutOfRange, "coordinate sum is not positive and finite");
  }
  for (double& c : coords) c /= sum;
  return coords;
}

}  // namespace

SimplexPoint SimplexPoint::validate(std::span<const double> raw) {
  if (raw.empty()) throw Error(ErrorCode::EmptyVector, "point has no coordinates");
  if (raw.size() < 2) {
    throw Error(ErrorCode::DimensionTooSmall, "a simplex point needs at least 2 coordinates");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i])) {
      throw Error(ErrorCode::NonFiniteValue, "coordinate " + std::to_string(i + 1) + " is not finite");
    }
    if (raw[i] < -kSumTolerance) {
      throw Error(ErrorCode::NegativeCoordinate,
                  "coordinate " + std::to_string(i + 1) + " is " + std::to_string(raw[i]));
    }
    sum += raw[i];
  }
  if (std::abs(sum - 1.0) > kIngestTolerance) {
    throw Error(ErrorCode::SumOutOfRange, "coordinates sum to " + std::to_string(sum));
  }
  return SimplexPoint(clamp_and_divide(std::vector<double>(raw.begin(), raw.end())));
}

SimplexPoint SimplexPoint::normalized(std::vector<double> coords) {
  if (coords.size() < 2) {
    throw Error(ErrorCode::DimensionTooSmall, "a simplex point needs at least 2 coordinates");
  }
  return SimplexPoint(clamp_and_divide(std::move(coords)));
}

SimplexPoint SimplexPoint::vertex(int m, int i) {
  if (m < 2) throw Error(ErrorCode::DimensionTooSmall, "m must be at least 2");
  if (i < 1 || i > m) throw Error(ErrorCode::IndexOutOfRange, "vertex index " + std::to_string(i));
  std::vector<double> c(static_cast<std::size_t>(m), 0.0);
  c[static_cast<std::size_t>(i - 1)] = 1.0;
  return SimplexPoint(std::move(c));
}

SimplexPoint SimplexPoint::center(int m) {
  if (m < 2) throw Error(ErrorCode::DimensionTooSmall, "m must be at least 2");
  return SimplexPoint(std::vector<double>(static_cast<std::size_t>(m), 1.0 / m));
}

double SimplexPoint::at(int i) const {
  if (i < 1 || i > dim()) throw Error(ErrorCode::IndexOutOfRange, "coordinate " + std::to_string(i));
  return coords_[static_cast<std::size_t>(i - 1)];
}

SimplexPoint validate_point(std::span<const double> raw) { return SimplexPoint::validate(raw); }

std::vector<int> support(const SimplexPoint& x, double tau_zero) {
  std::vector<int> out;
  for (int i = 0; i < x.dim(); ++i) {
    if (x[static_cast<std::size_t>(i)] > tau_zero) out.push_back(i + 1);
  }
  return out;
}

bool on_boundary(const SimplexPoint& x, double tau_zero) {
  return static_cast<int>(support(x, tau_zero).size()) < x.dim();
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "points differ in dimension");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

SimplexPoint parse_point(std::string_view text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string token(text.substr(pos, comma - pos));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::MalformedSyntax, "cannot parse coordinate '" + token + "'");
    }
    while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
    if (used != token.size()) {
      throw Error(ErrorCode::MalformedSyntax, "cannot parse coordinate '" + token + "'");
    }
    values.push_back(v);
    pos = comma + 1;
  }
  return SimplexPoint::validate(values);
}

// ---------------------------------------------------------------------------

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = size();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int start = 1; start <= n; ++start) {
    if (seen[static_cast<std::size_t>(start - 1)]) continue;
    std::vector<int> cycle;
    for (int k = start; !seen[static_cast<std::size_t>(k - 1)]; k = images_[static_cast<std::size_t>(k - 1)]) {
      seen[static_cast<std::size_t>(k - 1)] = true;
      cycle.push_back(k);
    }
    order_ = std::lcm(order_, static_cast<std::int64_t>(cycle.size()));
    cycles_.push_back(std::move(cycle));
  }
}

Permutation Permutation::identity(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "permutation size must be positive");
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::from_images(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "permutation size must be positive");
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (int v : images) {
    if (v < 1 || v > n) throw Error(ErrorCode::SymbolOutOfRange, "image " + std::to_string(v));
    if (hit[static_cast<std::size_t>(v - 1)]) {
      throw Error(ErrorCode::RepeatedSymbol, "image " + std::to_string(v) + " repeated");
    }
    hit[static_cast<std::size_t>(v - 1)] = true;
  }
  return Permutation(std::move(images));
}

int Permutation::operator()(int k) const {
  if (k < 1 || k > size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "index " + std::to_string(k) + " outside 1.." + std::to_string(size()));
  }
  return images_[static_cast<std::size_t>(k - 1)];
}

std::string Permutation::to_string() const {
  std::string out;
  for (const auto& cycle : cycles_) {
    if (cycle.size() < 2) continue;
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(cycle[i]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation parse_cycles(std::string_view text, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "permutation size must be positive");
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);

  auto skip_ws = [&](std::size_t& p) {
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
  };

  std::size_t p = 0;
  skip_ws(p);
  while (p < text.size()) {
    if (text[p] != '(') {
      throw Error(ErrorCode::MalformedSyntax, "expected '(' at offset " + std::to_string(p));
    }
    ++p;
    std::vector<int> cycle;
    for (;;) {
      skip_ws(p);
      if (p >= text.size()) throw Error(ErrorCode::MalformedSyntax, "unterminated cycle");
      if (text[p] == ')') {
        ++p;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[p]))) {
        throw Error(ErrorCode::MalformedSyntax,
                    std::string("unexpected character '") + text[p] + "' at offset " + std::to_string(p));
      }
      int value = 0;
      const auto [end, ec] = std::from_chars(text.data() + p, text.data() + text.size(), value);
      if (ec != std::errc()) throw Error(ErrorCode::SymbolOutOfRange, "symbol too large");
      p = static_cast<std::size_t>(end - text.data());
      if (p < text.size() && !std::isspace(static_cast<unsigned char>(text[p])) && text[p] != ')') {
        throw Error(ErrorCode::MalformedSyntax, "symbols must be separated by whitespace");
      }
      if (value < 1 || value > n) {
        throw Error(ErrorCode::SymbolOutOfRange,
                    "symbol " + std::to_string(value) + " outside 1.." + std::to_string(n));
      }
      if (used[static_cast<std::size_t>(value - 1)]) {
        throw Error(ErrorCode::RepeatedSymbol, "symbol " + std::to_string(value) + " repeated");
      }
      used[static_cast<std::size_t>(value - 1)] = true;
      cycle.push_back(value);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      images[static_cast<std::size_t>(cycle[i] - 1)] = cycle[(i + 1) % cycle.size()];
    }
    skip_ws(p);
  }
  return Permutation::from_images(std::move(images));
}

std::int64_t permutation_order(const Permutation& p) { return p.order(); }

int apply_permutation(const Permutation& p, int k) { return p(k); }

}  // namespace qso
