#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "odf/multipoly.hpp"
#include "odf/series.hpp"

namespace odf {

/// X_k, standing for δ^k b.
Var singer_var(std::size_t k);

/// An instance of the axiom: if P(ā) = 0, ∂P/∂X_n(ā) ≠ 0 and every Q_i(ā) > 0
/// then some b has P(b, δb, ..., δ^n b) = 0 (and Q_i > 0 at its jet).
/// P lives in X_0..X_n, the Q_i in X_0..X_{n-1}.
struct SingerInstance {
  std::size_t n = 0;
  MultiPoly P;
  std::vector<MultiPoly> Qs;
  std::vector<Rational> a;
};

struct PremiseReport {
  enum class Clause { None, Shape, PNonzero, SeparantZero, QNotPositive };
  bool ok = true;
  Clause failing = Clause::None;
  /// Index of the failing Q for QNotPositive.
  std::size_t index = 0;
  Rational value;
  std::string message;
};

std::string_view to_string(PremiseReport::Clause c);

PremiseReport check_singer_premise(const SingerInstance& s);

/// ∂P/∂X_n.
MultiPoly separant(const SingerInstance& s);

/// Formal witness b ∈ ℚ[[t]] of degree ≤ N with b^{(k)}(0) = a_k for k ≤ n
/// and P(b, b', ..., b^{(n)}) ≡ 0 mod t^{N-n+1}. Throws PremiseFails.
TruncatedSeries solve_singer_formal(const SingerInstance& s, int N);

/// P(b, ..., b^{(n)}) as a series of order N - n.
TruncatedSeries singer_residual(const SingerInstance& s, const TruncatedSeries& b);

/// The 2n-variable form: x_1..x_n stand for b..δ^{n-1}b and y_i for δx_i.
/// Chain equations y_i = x_{i+1} (i < n) plus the atom block in (x̄, y_n).
struct GeometricSystem {
  std::size_t n = 0;
  std::vector<Var> xs;
  std::vector<Var> ys;
  std::vector<std::pair<Var, Var>> chain;
  MultiPoly P;
  std::vector<MultiPoly> Qs;

  std::string render() const;
};

/// Throws InvalidArgument for n = 0 (there is no y block).
GeometricSystem singer_to_geometric(const SingerInstance& s);
/// The inverse reading; the witness tuple is left empty.
SingerInstance geometric_to_singer(const GeometricSystem& g);

/// Rows k = 1..n, columns j = 0..m of a cell-type matrix.
using CellTypeMatrix = std::vector<std::vector<int>>;

struct DeltaType {
  std::vector<int> type;
  std::size_t dimension = 0;
};

/// type_k = 1 iff row k is all ones; dimension = Σ type_k. Throws
/// InvalidArgument for entries outside {0, 1} or ragged rows.
DeltaType delta_type(const CellTypeMatrix& m);

/// a(t) = Σ c_k t^k / k! with c_k the midpoint of the k-th open interval, so
/// the jet of a at 0 lies in the box. Throws EmptyInterval when lo ≥ hi.
MultiPoly jet_box_witness(const std::vector<std::pair<Rational, Rational>>& box);

/// Parses `n = <nat>`, `P = <poly>`, `Q = <poly>` (repeatable) and
/// `a = (<rational>, ...)`, one statement per line; `#` starts a comment line.
SingerInstance parse_singer(std::string_view text);

}  // namespace odf
