#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tdsp/rational.hpp"

namespace tdsp {

// A time that may be unreachable. Infinity compares greater than every
// finite value.
class ArrivalTime {
 public:
  ArrivalTime(Rational value) : value_(std::move(value)) {}
  ArrivalTime(int value) : value_(Rational(value)) {}
  static ArrivalTime infinity() { return ArrivalTime(); }

  bool is_infinite() const { return !value_.has_value(); }
  // Throws DomainError when infinite.
  const Rational& value() const;
  std::string to_string() const;

  friend bool operator==(const ArrivalTime&, const ArrivalTime&) = default;
  friend std::strong_ordering operator<=>(const ArrivalTime& a, const ArrivalTime& b);

 private:
  ArrivalTime() = default;
  std::optional<Rational> value_;
};

std::ostream& operator<<(std::ostream& os, const ArrivalTime& t);

// One linear piece, valid from `start` up to the next piece's start.
struct Piece {
  Rational start;
  Rational slope;
  Rational intercept;

  Rational value_at(const Rational& t) const { return slope * t + intercept; }
  friend bool operator==(const Piece&, const Piece&) = default;
};

struct Breakpoint {
  Rational t;
  Rational value;
  Rational left_slope;
  Rational right_slope;
};

// Continuous piecewise-linear function on [0, inf), or the everywhere-infinite
// function. Always canonical: pieces start at 0, starts strictly increase and
// adjacent pieces are never collinear. Immutable once built.
class PwlFunction {
 public:
  static PwlFunction identity();
  static PwlFunction infinity();
  static PwlFunction linear(Rational slope, Rational intercept);
  // f(t) = t + delay
  static PwlFunction shift(Rational delay);
  // Breakpoint list form: (t_0 = 0, v_0), (t_1, v_1), ... joined by segments,
  // extended past the last point with `final_slope`.
  static PwlFunction from_points(std::span<const std::pair<Rational, Rational>> points,
                                 Rational final_slope);

  bool is_infinite() const { return infinite_; }
  std::span<const Piece> pieces() const { return pieces_; }
  std::size_t piece_count() const { return pieces_.size(); }
  std::size_t breakpoint_count() const {
    return pieces_.empty() ? 0 : pieces_.size() - 1;
  }
  std::vector<Breakpoint> breakpoints() const;

  // Index of the piece that covers t (t >= 0, finite function).
  std::size_t piece_index(const Rational& t) const;

  ArrivalTime operator()(const Rational& t) const;

  friend bool operator==(const PwlFunction&, const PwlFunction&) = default;

 private:
  friend PwlFunction canonicalize(std::vector<Piece> pieces);
  PwlFunction() = default;

  std::vector<Piece> pieces_;
  bool infinite_ = false;
};

// Throws DomainError for t < 0.
ArrivalTime eval(const PwlFunction& f, const Rational& t);

PwlFunction identity();
PwlFunction infinity();

// Pointwise minimum by a single merge sweep over both piece lists.
PwlFunction minimum(const PwlFunction& f, const PwlFunction& g);

// g o f, i.e. t -> g(f(t)). Needs f nondecreasing with f(0) >= 0.
PwlFunction compose(const PwlFunction& g, const PwlFunction& f);

// Merges collinear neighbours. Throws StructuralError when the pieces are
// unsorted, do not start at 0, or are discontinuous.
PwlFunction canonicalize(std::vector<Piece> pieces);
PwlFunction canonicalize(const PwlFunction& f);

std::size_t breakpoint_count(const PwlFunction& f);

struct FifoViolation {
  enum class Kind { negative_slope, below_identity };
  std::size_t piece;
  Kind kind;

  std::string describe() const;
  friend bool operator==(const FifoViolation&, const FifoViolation&) = default;
};

// At most one violation per piece; a negative slope is reported in
// preference to dropping below the identity.
std::vector<FifoViolation> validate_fifo(const PwlFunction& f);
bool is_fifo(const PwlFunction& f);

// Text form: "inf", or "(t0,v0)(t1,v1)...:slope" with t0 = 0. Values are
// integers or p/q. No whitespace, so it fits in a single token.
std::string to_string(const PwlFunction& f);
PwlFunction parse_function(std::string_view text);

std::ostream& operator<<(std::ostream& os, const PwlFunction& f);

}  // namespace tdsp
