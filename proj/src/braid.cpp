#include "kzknot/braid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace kzknot {

BraidWord::BraidWord(int strands, std::vector<Letter> letters)
    : strands_(strands), letters_(std::move(letters)) {
  if (strands_ < 1) throw std::invalid_argument("braid needs at least one strand");
  for (const Letter& l : letters_) {
    if (l.index < 1 || l.index > strands_ - 1)
      throw std::invalid_argument("generator index " + std::to_string(l.index) +
                                  " out of range for " + std::to_string(strands_) + " strands");
    if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("generator sign must be +1 or -1");
  }
}

std::string BraidWord::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(letters_[k].sign * letters_[k].index);
  }
  return out;
}

BraidWord parse_braid(std::string_view text, int strands) {
  using Kind = BraidParseError::Kind;
  if (strands < 1)
    throw BraidParseError(Kind::kBadStrandCount, 0,
                          "strand count must be positive, got " + std::to_string(strands));
  std::vector<Letter> letters;
  std::istringstream in{std::string(text)};
  std::string token;
  std::size_t position = 0;
  while (in >> token) {
    ++position;
    long value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last)
      throw BraidParseError(Kind::kNotAnInteger, position,
                            "token " + std::to_string(position) + " ('" + token +
                                "') is not an integer");
    if (value == 0)
      throw BraidParseError(Kind::kZeroToken, position,
                            "token " + std::to_string(position) + " is zero");
    if (std::labs(value) > strands - 1)
      throw BraidParseError(Kind::kIndexOutOfRange, position,
                            "token " + std::to_string(position) + " (" + token +
                                "): index out of range for " + std::to_string(strands) +
                                " strands");
    letters.push_back({static_cast<int>(std::labs(value)), value > 0 ? 1 : -1});
  }
  return BraidWord(strands, std::move(letters));
}

Permutation Permutation::identity(int n) {
  Permutation p;
  p.images.resize(n);
  for (int i = 0; i < n; ++i) p.images[i] = i + 1;
  return p;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images.resize(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) p.images[images[i] - 1] = static_cast<int>(i) + 1;
  return p;
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.size() != size()) throw std::invalid_argument("permutation sizes differ");
  Permutation p;
  p.images.resize(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) p.images[i] = next(images[i]);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images.size(); ++i)
    if (images[i] != static_cast<int>(i) + 1) return false;
  return true;
}

int Permutation::cycle_count() const {
  std::vector<char> seen(images.size(), 0);
  int cycles = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = images[j] - 1) seen[j] = 1;
  }
  return cycles;
}

Permutation permutation(const BraidWord& b) {
  const int n = b.strands();
  std::vector<int> strand_at(n);
  for (int i = 0; i < n; ++i) strand_at[i] = i;
  for (const Letter& l : b.letters()) std::swap(strand_at[l.index - 1], strand_at[l.index]);
  Permutation p;
  p.images.resize(n);
  for (int pos = 0; pos < n; ++pos) p.images[strand_at[pos]] = pos + 1;
  return p;
}

int closure_components(const BraidWord& b) { return permutation(b).cycle_count(); }

BraidWord concat(const BraidWord& lower, const BraidWord& upper) {
  if (lower.strands() != upper.strands())
    throw std::invalid_argument("cannot concatenate braids on " + std::to_string(lower.strands()) +
                                " and " + std::to_string(upper.strands()) + " strands");
  std::vector<Letter> letters = lower.letters();
  letters.insert(letters.end(), upper.letters().begin(), upper.letters().end());
  return BraidWord(lower.strands(), std::move(letters));
}

BraidWord inverse(const BraidWord& b) {
  std::vector<Letter> letters(b.letters().rbegin(), b.letters().rend());
  for (Letter& l : letters) l.sign = -l.sign;
  return BraidWord(b.strands(), std::move(letters));
}

BraidWord stabilize(const BraidWord& b, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("stabilization sign must be +1 or -1");
  std::vector<Letter> letters = b.letters();
  letters.push_back({b.strands(), sign});
  return BraidWord(b.strands() + 1, std::move(letters));
}

std::vector<double> natural_endpoints(int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = i + 1;
  return x;
}

BraidGeometry::BraidGeometry(const BraidWord& b, std::vector<double> endpoints, double aspect)
    : strands_(b.strands()), endpoints_(std::move(endpoints)), aspect_(aspect) {
  if (static_cast<int>(endpoints_.size()) != strands_)
    throw std::invalid_argument("expected " + std::to_string(strands_) + " endpoints, got " +
                                std::to_string(endpoints_.size()));
  for (std::size_t i = 0; i < endpoints_.size(); ++i) {
    if (!(endpoints_[i] > 0) || !std::isfinite(endpoints_[i]))
      throw std::invalid_argument("endpoints must be positive and finite");
    if (i && !(endpoints_[i] > endpoints_[i - 1]))
      throw std::invalid_argument("endpoints must be strictly increasing");
  }
  if (!(aspect_ > 0) || !std::isfinite(aspect_))
    throw std::invalid_argument("crossing aspect must be positive");

  std::vector<int> strand_at(strands_);
  for (int i = 0; i < strands_; ++i) strand_at[i] = i;
  for (const Letter& l : b.letters()) {
    Slice s;
    s.position = l.index - 1;
    s.sign = l.sign;
    s.left_strand = strand_at[s.position];
    s.right_strand = strand_at[s.position + 1];
    s.strand_at = strand_at;
    slices_.push_back(std::move(s));
    std::swap(strand_at[l.index - 1], strand_at[l.index]);
  }
}

BraidGeometry::State BraidGeometry::local_state(std::size_t k, double tau) const {
  State st;
  st.z.assign(strands_, {0.0, 0.0});
  st.dz.assign(strands_, {0.0, 0.0});
  if (slices_.empty()) {
    for (int i = 0; i < strands_; ++i) st.z[i] = endpoints_[i];
    return st;
  }
  const Slice& s = slices_.at(k);
  for (int pos = 0; pos < strands_; ++pos) st.z[s.strand_at[pos]] = endpoints_[pos];

  const double xl = endpoints_[s.position];
  const double xr = endpoints_[s.position + 1];
  const double centre = 0.5 * (xl + xr);
  const double radius = 0.5 * (xr - xl);
  const double angle = s.sign * std::numbers::pi * tau;
  const double rate = s.sign * std::numbers::pi;
  // Offset of the right-hand strand from the centre; the left strand is opposite.
  const std::complex<double> offset(radius * std::cos(angle), aspect_ * radius * std::sin(angle));
  const std::complex<double> velocity(-radius * rate * std::sin(angle),
                                      aspect_ * radius * rate * std::cos(angle));
  st.z[s.right_strand] = centre + offset;
  st.z[s.left_strand] = centre - offset;
  st.dz[s.right_strand] = velocity;
  st.dz[s.left_strand] = -velocity;
  return st;
}

std::size_t BraidGeometry::slice_index(double t) const {
  if (slices_.empty()) return 0;
  const double L = static_cast<double>(slices_.size());
  t = std::clamp(t, 0.0, 1.0);
  const double scaled = t * L;
  double k = std::ceil(scaled) - 1.0;
  if (k < 0) k = 0;
  return std::min(static_cast<std::size_t>(k), slices_.size() - 1);
}

BraidGeometry::State BraidGeometry::state(double t) const {
  if (slices_.empty()) return local_state(0, 0.0);
  const std::size_t k = slice_index(t);
  const double L = static_cast<double>(slices_.size());
  const double tau = std::clamp(t * L - static_cast<double>(k), 0.0, 1.0);
  State st = local_state(k, tau);
  for (auto& v : st.dz) v *= L;
  return st;
}

double BraidGeometry::min_separation(std::size_t k) const {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < strands_; ++i) best = std::min(best, endpoints_[i + 1] - endpoints_[i]);
  if (slices_.empty()) return best;
  const Slice& s = slices_.at(k);
  const double xl = endpoints_[s.position];
  const double xr = endpoints_[s.position + 1];
  const double centre = 0.5 * (xl + xr);
  const double radius = 0.5 * (xr - xl);
  // Moving pair: |2 * offset| >= 2r * min(1, aspect).
  best = std::min(best, 2.0 * radius * std::min(1.0, aspect_));
  // Moving strand vs a spectator on the real axis outside [xl, xr]: the real
  // part of the moving strand stays in [xl, xr].
  for (int pos = 0; pos < strands_; ++pos) {
    if (pos == s.position || pos == s.position + 1) continue;
    best = std::min(best, std::abs(endpoints_[pos] - centre) - radius);
  }
  return best;
}

BraidGeometry realize_geometry(const BraidWord& b, const std::vector<double>& endpoints,
                               double aspect) {
  return BraidGeometry(b, endpoints, aspect);
}

}  // namespace kzknot
