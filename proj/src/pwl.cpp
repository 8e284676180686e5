#include "tdsp/pwl.hpp"

#include <algorithm>
#include <sstream>

#include "tdsp/errors.hpp"

namespace tdsp {

const Rational& ArrivalTime::value() const {
  if (!value_) throw DomainError("value() of an infinite arrival time");
  return *value_;
}

std::string ArrivalTime::to_string() const {
  return value_ ? value_->to_string() : std::string("inf");
}

std::strong_ordering operator<=>(const ArrivalTime& a, const ArrivalTime& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return a.is_infinite() <=> b.is_infinite();
  }
  return *a.value_ <=> *b.value_;
}

std::ostream& operator<<(std::ostream& os, const ArrivalTime& t) {
  return os << t.to_string();
}

PwlFunction PwlFunction::identity() { return linear(1, 0); }

PwlFunction PwlFunction::infinity() {
  PwlFunction f;
  f.infinite_ = true;
  return f;
}

PwlFunction PwlFunction::linear(Rational slope, Rational intercept) {
  PwlFunction f;
  f.pieces_.push_back(Piece{0, std::move(slope), std::move(intercept)});
  return f;
}

PwlFunction PwlFunction::shift(Rational delay) { return linear(1, std::move(delay)); }

PwlFunction PwlFunction::from_points(
    std::span<const std::pair<Rational, Rational>> points, Rational final_slope) {
  if (points.empty()) throw StructuralError("function needs at least one point");
  std::vector<Piece> pieces;
  pieces.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& [t, v] = points[i];
    Rational slope;
    if (i + 1 < points.size()) {
      const auto& [t_next, v_next] = points[i + 1];
      if (t_next <= t) throw StructuralError("breakpoint times must strictly increase");
      slope = (v_next - v) / (t_next - t);
    } else {
      slope = final_slope;
    }
    Rational intercept = v - slope * t;
    pieces.push_back(Piece{t, std::move(slope), std::move(intercept)});
  }
  return canonicalize(std::move(pieces));
}

std::vector<Breakpoint> PwlFunction::breakpoints() const {
  std::vector<Breakpoint> out;
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    out.push_back(Breakpoint{p.start, p.value_at(p.start), pieces_[i - 1].slope, p.slope});
  }
  return out;
}

std::size_t PwlFunction::piece_index(const Rational& t) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                             [](const Rational& x, const Piece& p) { return x < p.start; });
  return it == pieces_.begin() ? 0 : static_cast<std::size_t>(it - pieces_.begin()) - 1;
}

ArrivalTime PwlFunction::operator()(const Rational& t) const { return eval(*this, t); }

ArrivalTime eval(const PwlFunction& f, const Rational& t) {
  if (t.sign() < 0) throw DomainError("arrival function evaluated at t = " + t.to_string());
  if (f.is_infinite()) return ArrivalTime::infinity();
  return f.pieces()[f.piece_index(t)].value_at(t);
}

PwlFunction identity() { return PwlFunction::identity(); }
PwlFunction infinity() { return PwlFunction::infinity(); }

PwlFunction minimum(const PwlFunction& f, const PwlFunction& g) {
  if (f.is_infinite()) return g;
  if (g.is_infinite()) return f;

  const auto fp = f.pieces();
  const auto gp = g.pieces();
  std::vector<Piece> out;
  out.reserve(2 * (fp.size() + gp.size()));
  auto emit = [&out](const Rational& at, const Piece& line) {
    out.push_back(Piece{at, line.slope, line.intercept});
  };

  std::size_t i = 0;
  std::size_t j = 0;
  Rational a = 0;
  while (true) {
    const Piece& p = fp[i];
    const Piece& q = gp[j];
    std::optional<Rational> b;
    if (i + 1 < fp.size()) b = fp[i + 1].start;
    if (j + 1 < gp.size() && (!b || gp[j + 1].start < *b)) b = gp[j + 1].start;

    // On [a, b) both are single lines; they cross at most once.
    const Rational dv = p.value_at(a) - q.value_at(a);
    const Rational ds = p.slope - q.slope;
    const bool p_lower = dv.sign() < 0 || (dv.sign() == 0 && ds.sign() <= 0);
    emit(a, p_lower ? p : q);
    if (dv.sign() != 0 && ds.sign() != 0 && dv.sign() != ds.sign()) {
      Rational cross = a - dv / ds;
      if (!b || cross < *b) emit(cross, p_lower ? q : p);
    }

    if (!b) break;
    a = *b;
    if (i + 1 < fp.size() && fp[i + 1].start == a) ++i;
    if (j + 1 < gp.size() && gp[j + 1].start == a) ++j;
  }
  return canonicalize(std::move(out));
}

PwlFunction compose(const PwlFunction& g, const PwlFunction& f) {
  if (f.is_infinite() || g.is_infinite()) return PwlFunction::infinity();

  const auto fp = f.pieces();
  const auto gp = g.pieces();
  std::vector<Piece> out;
  out.reserve(fp.size() + gp.size());
  auto emit = [&out](const Rational& at, const Piece& inner, const Piece& outer) {
    out.push_back(Piece{at, outer.slope * inner.slope,
                        outer.slope * inner.intercept + outer.intercept});
  };

  // f is monotone, so the images of f's pieces walk g's pieces left to right.
  std::size_t gi = 0;
  for (std::size_t k = 0; k < fp.size(); ++k) {
    const Piece& p = fp[k];
    if (p.slope.sign() < 0) throw DomainError("compose: inner function is decreasing");
    const Rational fa = p.value_at(p.start);
    if (fa.sign() < 0) throw DomainError("compose: inner function takes negative values");
    while (gi + 1 < gp.size() && gp[gi + 1].start <= fa) ++gi;
    emit(p.start, p, gp[gi]);
    if (p.slope.sign() == 0) continue;

    std::optional<Rational> fb;
    if (k + 1 < fp.size()) fb = p.value_at(fp[k + 1].start);
    while (gi + 1 < gp.size() && (!fb || gp[gi + 1].start < *fb)) {
      ++gi;
      emit((gp[gi].start - p.intercept) / p.slope, p, gp[gi]);
    }
  }
  return canonicalize(std::move(out));
}

PwlFunction canonicalize(std::vector<Piece> pieces) {
  if (pieces.empty()) throw StructuralError("finite function with no pieces");
  if (pieces.front().start.sign() != 0) {
    throw StructuralError("first piece starts at " + pieces.front().start.to_string() +
                          ", expected 0");
  }
  PwlFunction f;
  f.pieces_.reserve(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (i > 0) {
      const Piece& prev = pieces[i - 1];
      if (p.start <= prev.start) {
        throw StructuralError("piece starts not strictly increasing at piece " +
                              std::to_string(i));
      }
      if (prev.value_at(p.start) != p.value_at(p.start)) {
        throw StructuralError("discontinuity at t = " + p.start.to_string());
      }
    }
    if (!f.pieces_.empty() && f.pieces_.back().slope == p.slope &&
        f.pieces_.back().intercept == p.intercept) {
      continue;
    }
    f.pieces_.push_back(p);
  }
  return f;
}

PwlFunction canonicalize(const PwlFunction& f) {
  if (f.is_infinite()) return f;
  return canonicalize(std::vector<Piece>(f.pieces().begin(), f.pieces().end()));
}

std::size_t breakpoint_count(const PwlFunction& f) { return f.breakpoint_count(); }

std::string FifoViolation::describe() const {
  std::string what = kind == Kind::negative_slope ? "negative slope" : "f(t) < t";
  return "piece " + std::to_string(piece) + ": " + what;
}

std::vector<FifoViolation> validate_fifo(const PwlFunction& f) {
  std::vector<FifoViolation> out;
  if (f.is_infinite()) return out;
  const auto ps = f.pieces();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Piece& p = ps[i];
    if (p.slope.sign() < 0) {
      out.push_back({i, FifoViolation::Kind::negative_slope});
      continue;
    }
    // Linear on the piece, so checking both ends (or the tail slope) suffices.
    bool below = p.value_at(p.start) < p.start;
    if (i + 1 < ps.size()) {
      below = below || p.value_at(ps[i + 1].start) < ps[i + 1].start;
    } else {
      below = below || p.slope < Rational(1);
    }
    if (below) out.push_back({i, FifoViolation::Kind::below_identity});
  }
  return out;
}

bool is_fifo(const PwlFunction& f) { return validate_fifo(f).empty(); }

std::string to_string(const PwlFunction& f) {
  if (f.is_infinite()) return "inf";
  std::string out;
  for (const Piece& p : f.pieces()) {
    out += '(';
    out += p.start.to_string();
    out += ',';
    out += p.value_at(p.start).to_string();
    out += ')';
  }
  out += ':';
  out += f.pieces().back().slope.to_string();
  return out;
}

PwlFunction parse_function(std::string_view text) {
  if (text == "inf") return PwlFunction::infinity();
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError(0, "invalid function '" + std::string(text) + "': " + why);
  };
  std::vector<std::pair<Rational, Rational>> points;
  std::size_t pos = 0;
  while (pos < text.size() && text[pos] == '(') {
    const auto comma = text.find(',', pos);
    const auto close = text.find(')', pos);
    if (comma == std::string_view::npos || close == std::string_view::npos || comma > close) {
      throw fail("expected (t,value)");
    }
    try {
      points.emplace_back(Rational::parse(text.substr(pos + 1, comma - pos - 1)),
                          Rational::parse(text.substr(comma + 1, close - comma - 1)));
    } catch (const ParseError& e) {
      throw fail(e.what());
    }
    pos = close + 1;
  }
  if (points.empty()) throw fail("no points");
  if (pos >= text.size() || text[pos] != ':') throw fail("expected ':' before final slope");
  Rational slope;
  try {
    slope = Rational::parse(text.substr(pos + 1));
  } catch (const ParseError& e) {
    throw fail(e.what());
  }
  if (points.front().first.sign() != 0) throw fail("first point must be at t = 0");
  try {
    return PwlFunction::from_points(points, slope);
  } catch (const StructuralError& e) {
    throw fail(e.what());
  }
}

std::ostream& operator<<(std::ostream& os, const PwlFunction& f) { return os << to_string(f); }

}  // namespace tdsp
