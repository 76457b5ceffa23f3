#include "odf/matroid.hpp"

#include <bit>
#include <random>

#include "odf/theta.hpp"

namespace odf {

std::size_t matrix_rank(QMatrix rows) {
  std::size_t rank = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      Rational factor = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::size_t linear_rank(const std::vector<QVector>& vectors) {
  if (vectors.empty()) return 0;
  for (const auto& v : vectors)
    if (v.size() != vectors[0].size()) throw Error(ErrorCode::InvalidArgument, "vectors of different dimensions");
  return matrix_rank(vectors);
}

LinearMatroid::LinearMatroid(std::vector<QVector> ground) : ground_(std::move(ground)) {
  for (const auto& v : ground_)
    if (v.size() != ground_[0].size()) throw Error(ErrorCode::InvalidArgument, "vectors of different dimensions");
}

const QVector& LinearMatroid::element(std::size_t i) const {
  if (i >= ground_.size()) throw Error(ErrorCode::UnknownElement, "no element " + std::to_string(i));
  return ground_[i];
}

std::size_t LinearMatroid::rank(const std::vector<std::size_t>& A, const std::vector<std::size_t>& B) const {
  std::vector<QVector> both;
  std::vector<QVector> base;
  for (auto i : B) base.push_back(element(i));
  both = base;
  for (auto i : A) both.push_back(element(i));
  return linear_rank(both) - linear_rank(base);
}

namespace {

std::vector<Var> all_vars(const std::vector<RationalFunction>& elements) {
  std::vector<Var> vars;
  for (const auto& f : elements)
    for (const auto& v : f.vars())
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  return vars;
}

std::size_t exact_rank(RfMatrix m) {
  std::size_t rank = 0;
  std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    RationalFunction inv = m[rank][c].inverse();
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c].is_zero()) continue;
      RationalFunction factor = m[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t JacobianRank::operator()(const std::vector<RationalFunction>& elements) const {
  std::vector<Var> vars = all_vars(elements);
  if (vars.empty()) return 0;
  RfMatrix jac = jacobian(elements, vars);
  if (mode == Mode::Exact) return exact_rank(jac);

  std::size_t full = std::min(elements.size(), vars.size());
  std::optional<std::size_t> best;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    // Schwartz-Zippel: a nonzero minor survives at a random point with high
    // probability; taking the maximum over attempts only ever helps.
    std::mt19937_64 gen(seed * 1000003u + static_cast<std::uint64_t>(attempt));
    std::uniform_int_distribution<int> num(-1000, 1000);
    std::uniform_int_distribution<int> den(1, 97);
    std::map<Var, Rational, VarRankGreater> point;
    for (const auto& v : vars) point[v] = make_rational(num(gen), den(gen));
    QMatrix values(jac.size(), QVector(vars.size()));
    bool defined = true;
    for (std::size_t r = 0; r < jac.size() && defined; ++r)
      for (std::size_t c = 0; c < vars.size() && defined; ++c) {
        try {
          values[r][c] = evaluate<Rational>(
              jac[r][c], [&](const Var& v) { return point.at(v); }, [](const Rational& d) { return d != 0; },
              Rational(0), Rational(1));
        } catch (const Error&) {
          defined = false;
        }
      }
    if (!defined) continue;
    std::size_t r = matrix_rank(std::move(values));
    if (!best || r > *best) best = r;
    if (*best == full) break;
  }
  if (!best) return exact_rank(jac);
  return *best;
}

AlgebraicMatroid::AlgebraicMatroid(std::vector<RationalFunction> ground, JacobianRank rank)
    : ground_(std::move(ground)), jac_(rank) {}

const RationalFunction& AlgebraicMatroid::element(std::size_t i) const {
  if (i >= ground_.size()) throw Error(ErrorCode::UnknownElement, "no element " + std::to_string(i));
  return ground_[i];
}

std::size_t AlgebraicMatroid::rank(const std::vector<std::size_t>& A, const std::vector<std::size_t>& B) const {
  std::vector<RationalFunction> base;
  for (auto i : B) base.push_back(element(i));
  std::vector<RationalFunction> both = base;
  for (auto i : A) both.push_back(element(i));
  return jac_(both) - jac_(base);
}

LinearEndoSystem linear_endo_system(QMatrix M) {
  LinearEndoSystem S;
  S.span_rank = [](const std::vector<QVector>& v) { return linear_rank(v); };
  S.delta = [M = std::move(M)](const QVector& v) {
    if (!M.empty() && M[0].size() != v.size())
      throw Error(ErrorCode::InvalidArgument, "linear map and vector dimensions differ");
    QVector out(M.size());
    for (std::size_t r = 0; r < M.size(); ++r)
      for (std::size_t c = 0; c < v.size(); ++c) out[r] += M[r][c] * v[c];
    return out;
  };
  return S;
}

AlgebraicEndoSystem algebraic_endo_system(PolyDerivation d, JacobianRank rank) {
  AlgebraicEndoSystem S;
  S.span_rank = rank;
  S.delta = [d = std::move(d)](const RationalFunction& f) { return d.apply(f); };
  return S;
}

IndependenceReport multi_delta_independent(const std::vector<PolyDerivation>& derivations,
                                           const RationalFunction& a, const std::vector<RationalFunction>& B,
                                           std::uint32_t ord_max, JacobianRank rank) {
  std::size_t p = derivations.size();
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      for (const auto& z : derivations[i].universe()) {
        RationalFunction zf = RationalFunction::variable(z);
        if (derivations[i].apply(derivations[j].apply(zf)) != derivations[j].apply(derivations[i].apply(zf)))
          throw Error(ErrorCode::NonCommutingDerivations,
                      "derivations " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                          " do not commute on " + render(z, 1));
      }

  // θx computed from the predecessor with the first nonzero exponent lowered.
  auto jets = [&](const RationalFunction& x, std::uint32_t bound) {
    std::map<std::vector<std::uint32_t>, RationalFunction> memo;
    std::vector<RationalFunction> out;
    for (const auto& theta : enumerate_theta(p, bound)) {
      RationalFunction value = x;
      if (!theta.is_identity()) {
        std::size_t k = 0;
        while (theta[k] == 0) ++k;
        auto prev = theta.exponents();
        --prev[k];
        value = derivations[k].apply(memo.at(prev));
      }
      memo.emplace(theta.exponents(), value);
      out.push_back(value);
    }
    return out;
  };

  std::vector<RationalFunction> base;
  for (const auto& b : B) {
    auto jb = jets(b, ord_max);
    base.insert(base.end(), jb.begin(), jb.end());
  }
  std::size_t base_rank = rank(base);
  std::vector<RationalFunction> ja = jets(a, ord_max);
  IndependenceReport report;
  for (std::uint32_t d = 0; d <= ord_max; ++d) {
    std::size_t count = enumerate_theta(p, d).size();
    std::vector<RationalFunction> both = base;
    both.insert(both.end(), ja.begin(), ja.begin() + static_cast<std::ptrdiff_t>(count));
    std::size_t r = rank(both) - base_rank;
    report.rank = r;
    report.size = count;
    if (r < count) {
      report.independent = false;
      report.witness_order = d;
      return report;
    }
  }
  return report;
}

bool satisfies_rank_axioms(const std::function<std::size_t(std::uint32_t)>& rank, std::size_t n) {
  std::uint32_t full = (1u << n) - 1;
  if (rank(0) != 0) return false;
  for (std::uint32_t a = 0; a <= full; ++a) {
    std::size_t ra = rank(a);
    if (ra > static_cast<std::size_t>(std::popcount(a))) return false;
    for (std::size_t k = 0; k < n; ++k)
      if (rank(a | (1u << k)) < ra) return false;
    for (std::uint32_t b = 0; b <= full; ++b)
      if (rank(a | b) + rank(a & b) > ra + rank(b)) return false;
  }
  return true;
}

}  // namespace odf
