#include "odf/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "line_parse.hpp"
#include "odf/codf.hpp"
#include "odf/coherence.hpp"
#include "odf/diffpoly.hpp"
#include "odf/error.hpp"
#include "odf/matroid.hpp"
#include "odf/models.hpp"
#include "odf/rewrite.hpp"
#include "odf/theta.hpp"
#include "odf/univariate.hpp"

namespace odf::cli {

namespace {

using json = nlohmann::ordered_json;

struct Result {
  std::string text;
  json data;
};

struct Input {
  std::string inline_text;
  std::string file;

  std::string load() const {
    if (!file.empty() && !inline_text.empty())
      throw Error(ErrorCode::InvalidArgument, "give the input inline or with -f, not both");
    if (file.empty()) return inline_text;
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + file);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
};

// Input text with positions: offsets map to 1-based line and column.
class Source {
 public:
  explicit Source(std::string_view text) : text_(text) {}

  std::string_view text() const { return text_; }

  // Line number and 0-based column of an offset.
  std::pair<std::size_t, std::size_t> locate(std::size_t offset) const {
    std::size_t line = 1, start = 0;
    for (std::size_t k = 0; k < offset && k < text_.size(); ++k)
      if (text_[k] == '\n') {
        ++line;
        start = k + 1;
      }
    return {line, offset - start};
  }

  [[noreturn]] void fail(std::size_t offset, const std::string& msg) const {
    auto [line, col] = locate(offset);
    detail::fail(msg, line, col + 1);
  }

  template <class Parse>
  auto parse(std::size_t b, std::size_t e, Parse&& f) const {
    auto [line, col] = locate(b);
    try {
      return f(text_.substr(b, e - b));
    } catch (const ParseError& err) {
      detail::relocate(err, line, col);
    }
  }

  TermPtr term(std::size_t b, std::size_t e) const {
    return parse(b, e, [](std::string_view s) { return parse_term(s); });
  }

  RationalFunction rf(std::size_t b, std::size_t e) const { return rewrite_term(term(b, e)).value; }

  Rational constant(std::size_t b, std::size_t e) const {
    RationalFunction f = rf(b, e);
    if (!f.is_constant()) fail(first_non_space(b, e), "expected a rational number");
    return f.constant_value();
  }

  bool blank(std::size_t b, std::size_t e) const { return first_non_space(b, e) == e; }

  std::size_t first_non_space(std::size_t b, std::size_t e) const {
    while (b < e && std::isspace(static_cast<unsigned char>(text_[b]))) ++b;
    return b;
  }

  // Splits [b, e) at separator characters outside parentheses and brackets.
  std::vector<std::pair<std::size_t, std::size_t>> split(std::size_t b, std::size_t e,
                                                         std::string_view separators) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    int depth = 0;
    std::size_t start = b;
    for (std::size_t k = b; k < e; ++k) {
      char c = text_[k];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      if (depth == 0 && separators.find(c) != std::string_view::npos) {
        out.emplace_back(start, k);
        start = k + 1;
      }
    }
    out.emplace_back(start, e);
    return out;
  }

  // A whitespace-separated list of parenthesized tuples `(a, b, ...)`.
  std::vector<std::vector<Rational>> tuples(std::size_t b, std::size_t e) const {
    std::vector<std::vector<Rational>> out;
    std::size_t k = first_non_space(b, e);
    while (k < e) {
      if (text_[k] != '(') fail(k, "expected '('");
      int depth = 0;
      std::size_t close = k;
      for (; close < e; ++close) {
        if (text_[close] == '(') ++depth;
        if (text_[close] == ')' && --depth == 0) break;
      }
      if (close == e) fail(k, "unbalanced '('");
      std::vector<Rational> tuple;
      for (auto [pb, pe] : split(k + 1, close, ",")) {
        if (blank(pb, pe)) fail(pb, "empty entry");
        tuple.push_back(constant(pb, pe));
      }
      out.push_back(std::move(tuple));
      k = first_non_space(close + 1, e);
    }
    return out;
  }

 private:
  std::string_view text_;
};

json rational_json(const Rational& q) { return q.get_str(); }

json theta_json(const Theta& t) { return t.exponents(); }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

std::size_t formula_derivations(const FormulaPtr& f) {
  if (f->kind == DiffFormula::Kind::Atom) return std::max(term_derivations(f->lhs), term_derivations(f->rhs));
  std::size_t n = formula_derivations(f->a);
  return f->b ? std::max(n, formula_derivations(f->b)) : n;
}

// ---- rewrite ---------------------------------------------------------------

Result cmd_rewrite(const std::string& in) {
  Result r;
  std::string nf;
  std::map<std::string, std::uint32_t> depth;
  std::uint32_t m = 0;
  bool formula = looks_like_formula(in);
  if (formula) {
    FormulaPtr f = parse_formula(in);
    RewrittenFormula w = rewrite_formula(f);
    nf = render(w.formula, std::max<std::size_t>(1, formula_derivations(f)));
    depth = w.depth;
    m = w.max_depth;
  } else {
    TermPtr t = parse_term(in);
    JetTerm j = rewrite_term(t);
    nf = j.value.render(std::max<std::size_t>(1, term_derivations(t)));
    depth = j.depth;
    m = j.max_depth;
  }
  r.text = nf + ", m=" + std::to_string(m);
  r.data = {{"kind", formula ? "formula" : "term"}, {"normal_form", nf}, {"m", m}, {"depth", depth}};
  return r;
}

// ---- lie -------------------------------------------------------------------

Result cmd_lie(const std::string& in) {
  Source src(in);
  std::vector<VarMap> maps;
  for (auto [b, e] : src.split(0, in.size(), ";")) {
    VarMap images;
    for (auto [ib, ie] : src.split(b, e, ",")) {
      std::string_view item = src.text().substr(ib, ie - ib);
      std::size_t arrow = item.find("->");
      if (arrow == std::string_view::npos) src.fail(src.first_non_space(ib, ie), "expected '<variable> -> <image>'");
      TermPtr v = src.term(ib, ib + arrow);
      if (v->kind != DiffTerm::Kind::Var) src.fail(src.first_non_space(ib, ie), "expected a variable before '->'");
      if (images.count(v->var)) src.fail(src.first_non_space(ib, ie), "second image for " + v->var.name());
      images.emplace(v->var, src.rf(ib + arrow + 2, ie));
    }
    maps.push_back(std::move(images));
  }
  if (maps.size() != 2) throw Error(ErrorCode::InvalidArgument, "expected two derivations separated by ';'");
  // Variables named by only one side are sent to 0 by the other.
  for (auto& [v, _] : VarMap(maps[0])) maps[1].try_emplace(v, RationalFunction(0));
  for (auto& [v, _] : VarMap(maps[1])) maps[0].try_emplace(v, RationalFunction(0));
  PolyDerivation bracket = lie_bracket(PolyDerivation(maps[0]), PolyDerivation(maps[1]));
  Result r;
  std::vector<std::string> parts;
  json images = json::object();
  for (const auto& [v, f] : bracket.images()) {
    parts.push_back(render(v, 1) + " -> " + f.render());
    images[render(v, 1)] = f.render();
  }
  r.text = join(parts, ", ");
  r.data = {{"bracket", images}, {"zero", bracket.is_zero()}};
  return r;
}

// ---- coherence -------------------------------------------------------------

json conflict_json(const Conflict& c, const RationalFunction& g1, const RationalFunction& g2, std::size_t p) {
  return {{"theta", theta_json(c.theta)},
          {"via", theta_json(c.phi1)},
          {"value", g1.render(p)},
          {"other_via", theta_json(c.phi2)},
          {"other_value", g2.render(p)},
          {"difference", c.difference.render(p)}};
}

// The coherence verdict as text and object; the conflicting values are read
// back from the derived system.
std::pair<std::string, json> describe(const Condition& c, const CoherenceReport& rep) {
  if (rep.coherent) return {"coherent", {{"coherent", true}}};
  const Conflict& k = *rep.conflict;
  DerivedSystem ds = derive_system(c, k.theta.order());
  const OmegaEntry& entry = ds.omega.at(k.theta);
  auto value_via = [&](const Theta& phi) -> const RationalFunction& {
    for (const auto& m : entry.members)
      if (m.via == phi) return m.value;
    throw Error(ErrorCode::InvalidArgument, "conflict member missing");
  };
  const RationalFunction& g1 = value_via(k.phi1);
  const RationalFunction& g2 = value_via(k.phi2);
  std::string text = "conflict at " + k.theta.render() + ": via " + k.phi1.render() + " gives " + g1.render(c.p) +
                     ", via " + k.phi2.render() + " gives " + g2.render(c.p);
  return {text, {{"coherent", false}, {"conflict", conflict_json(k, g1, g2, c.p)}}};
}

Result cmd_coherence_check(const std::string& in, std::optional<unsigned> ord) {
  Condition c = parse_condition(in);
  auto [text, data] = describe(c, is_coherent(c));
  Result r;
  r.text = text;
  r.data = data;
  if (ord) {
    auto [ptext, pdata] = describe(c, strong_coherence_probe(c, *ord));
    r.text += "\nprobe to ord " + std::to_string(*ord) + ": " + ptext;
    pdata["ord"] = *ord;
    r.data["probe"] = pdata;
  }
  return r;
}

Result cmd_coherence_solve(const std::string& in, int deg) {
  Condition c = parse_condition(in);
  TruncatedSeries a = solve_condition_series(c, c.init, deg);
  VerifyResult v = verify_solution(c, a);
  Result r;
  json coefficients = json::array();
  std::vector<std::string> lines;
  for (const Theta& t : enumerate_theta(c.p, static_cast<std::uint32_t>(deg))) {
    Rational q = a.coefficient(t.exponents());
    lines.push_back(t.render() + " " + q.get_str());
    coefficients.push_back({{"monomial", theta_json(t)}, {"coefficient", rational_json(q)}});
  }
  lines.push_back(v.ok ? "verified" : "verification failed: " + v.message);
  r.text = join(lines, "\n");
  r.data = {{"degree", deg}, {"coefficients", coefficients}, {"verified", v.ok}};
  if (!v.ok) r.data["message"] = v.message;
  return r;
}

// ---- singer ----------------------------------------------------------------

Result cmd_singer_check(const std::string& in) {
  SingerInstance s = parse_singer(in);
  PremiseReport p = check_singer_premise(s);
  if (p.failing == PremiseReport::Clause::Shape) throw Error(ErrorCode::InvalidArgument, p.message);
  Result r;
  r.text = p.ok ? "premise holds" : "premise fails: " + p.message;
  r.data = {{"premise", p.ok}};
  if (!p.ok) {
    r.data["clause"] = std::string(to_string(p.failing));
    r.data["message"] = p.message;
    if (p.failing == PremiseReport::Clause::QNotPositive) r.data["index"] = p.index;
    if (p.failing != PremiseReport::Clause::SeparantZero) r.data["value"] = rational_json(p.value);
  }
  return r;
}

Result cmd_singer_solve(const std::string& in, int deg) {
  SingerInstance s = parse_singer(in);
  TruncatedSeries b = solve_singer_formal(s, deg);
  std::vector<std::string> parts;
  json coefficients = json::array();
  for (int k = 0; k <= deg; ++k) {
    Rational q = b.coefficient({static_cast<std::uint32_t>(k)});
    parts.push_back(q.get_str());
    coefficients.push_back(rational_json(q));
  }
  Result r;
  r.text = join(parts, ", ");
  r.data = {{"kind", "formal witness"}, {"degree", deg}, {"coefficients", coefficients}};
  return r;
}

// ---- rank ------------------------------------------------------------------

QMatrix parse_matrix(const std::string& text) {
  Source src(text);
  QMatrix m;
  for (auto [b, e] : src.split(0, text.size(), ";\n")) {
    if (src.blank(b, e)) continue;
    QVector row;
    for (auto [cb, ce] : src.split(b, e, ",")) row.push_back(src.constant(cb, ce));
    m.push_back(std::move(row));
  }
  return m;
}

Result cmd_rank(const std::string& in, const std::string& matrix, std::optional<unsigned> ord, std::uint64_t seed) {
  Source src(in);
  std::size_t bar = in.find('|');
  std::size_t a_end = bar == std::string::npos ? in.size() : bar;
  std::size_t b_begin = bar == std::string::npos ? in.size() : bar + 1;
  bool vectors = src.first_non_space(0, in.size()) < in.size() && in[src.first_non_space(0, in.size())] == '(';
  Result r;
  if (vectors) {
    auto A = src.tuples(0, a_end);
    auto B = src.tuples(b_begin, in.size());
    if (!matrix.empty()) {
      QMatrix M = parse_matrix(matrix);
      for (const auto& row : M)
        if (row.size() != M.size()) throw Error(ErrorCode::InvalidArgument, "the matrix must be square");
      for (const auto* list : {&A, &B})
        for (const auto& v : *list)
          if (v.size() != M.size()) throw Error(ErrorCode::InvalidArgument, "vector and matrix dimensions differ");
      int k_max = ord ? static_cast<int>(*ord) : 8;
      DeltaRankResult d = delta_rank(linear_endo_system(M), A, B, k_max, 3);
      std::vector<std::string> inc;
      for (auto x : d.increments) inc.push_back(std::to_string(x));
      r.text = "delta-rank " + std::to_string(d.value) + (d.stabilized ? ", stabilized" : ", not stabilized") +
               ", increments " + join(inc, ", ");
      r.data = {{"delta_rank", d.value}, {"stabilized", d.stabilized}, {"increments", d.increments}};
      return r;
    }
    std::vector<QVector> ground = A;
    ground.insert(ground.end(), B.begin(), B.end());
    if (ground.empty()) throw Error(ErrorCode::InvalidArgument, "no vectors given");
    LinearMatroid M(ground);
    std::vector<std::size_t> ia, ib;
    for (std::size_t k = 0; k < A.size(); ++k) ia.push_back(k);
    for (std::size_t k = 0; k < B.size(); ++k) ib.push_back(A.size() + k);
    std::size_t rank = M.rank(ia, ib);
    r.text = "rank " + std::to_string(rank);
    r.data = {{"rank", rank}, {"kind", "linear"}};
    return r;
  }
  if (!matrix.empty()) throw Error(ErrorCode::InvalidArgument, "--matrix needs vector elements");
  std::vector<RationalFunction> ground;
  std::size_t na = 0;
  for (auto [b, e] : src.split(0, a_end, ","))
    if (!src.blank(b, e)) ground.push_back(src.rf(b, e)), ++na;
  if (bar != std::string::npos)
    for (auto [b, e] : src.split(b_begin, in.size(), ","))
      if (!src.blank(b, e)) ground.push_back(src.rf(b, e));
  JacobianRank jr;
  jr.seed = seed;
  AlgebraicMatroid M(ground, jr);
  std::vector<std::size_t> ia, ib;
  for (std::size_t k = 0; k < ground.size(); ++k) (k < na ? ia : ib).push_back(k);
  std::size_t rank = M.rank(ia, ib);
  r.text = "rank " + std::to_string(rank);
  r.data = {{"rank", rank}, {"kind", "algebraic"}};
  return r;
}

// ---- theta -----------------------------------------------------------------

std::vector<Theta> theta_args(const std::string& in, std::size_t min_count, std::size_t max_count) {
  std::string flat = in;
  std::replace(flat.begin(), flat.end(), '\n', ' ');
  std::vector<Theta> list = parse_theta_list(flat);
  if (list.size() < min_count || list.size() > max_count) {
    std::string want = min_count == max_count ? std::to_string(min_count) : "at least " + std::to_string(min_count);
    throw Error(ErrorCode::InvalidArgument, "expected " + want + " elements, got " + std::to_string(list.size()));
  }
  for (const auto& t : list)
    if (t.p() != list[0].p()) throw Error(ErrorCode::InvalidArgument, "elements of different arity");
  return list;
}

Result theta_list_result(const std::vector<Theta>& list) {
  Result r;
  std::vector<std::string> parts;
  json elements = json::array();
  for (const auto& t : list) {
    parts.push_back(t.render());
    elements.push_back(theta_json(t));
  }
  r.text = parts.empty() ? "(none)" : join(parts, " ");
  r.data = {{"elements", elements}};
  return r;
}

Result theta_element_result(const Theta& t) {
  return {t.render(), {{"element", theta_json(t)}}};
}

Result cmd_theta(const std::string& mode, const std::string& in, std::optional<unsigned> p,
                 std::optional<unsigned> ord) {
  constexpr std::size_t many = static_cast<std::size_t>(-1);
  if (mode == "enum") {
    if (!p || !ord) throw Error(ErrorCode::InvalidArgument, "theta enum needs --p and --ord");
    if (*p == 0) throw Error(ErrorCode::InvalidArgument, "--p must be positive");
    return theta_list_result(enumerate_theta(*p, *ord));
  }
  if (mode == "min") {
    auto list = theta_args(in, 1, many);
    return theta_list_result(dickson_min(list, list[0].p()).elements());
  }
  if (mode == "pred") return theta_list_result(predecessors(theta_args(in, 1, 1)[0]));
  if (mode == "join" || mode == "meet") {
    auto list = theta_args(in, 1, many);
    Theta acc = list[0];
    for (const auto& t : list) acc = mode == "join" ? theta_join(acc, t) : theta_meet(acc, t);
    return theta_element_result(acc);
  }
  // cmp
  auto list = theta_args(in, 2, 2);
  const Theta &a = list[0], &b = list[1];
  auto c = theta_cmp(a, b);
  std::string sym = c < 0 ? "<" : c > 0 ? ">" : "=";
  std::string div = a == b                 ? "equal"
                    : theta_divides(a, b) ? "divides"
                    : theta_divides(b, a) ? "divided by"
                                          : "incomparable";
  return {a.render() + " " + sym + " " + b.render() + ", " + div, {{"order", sym}, {"divisibility", div}}};
}

// ---- delta-dim -------------------------------------------------------------

Result cmd_delta_dim(const std::string& in) {
  Source src(in);
  CellTypeMatrix m;
  for (auto [b, e] : src.split(0, in.size(), ";\n")) {
    if (src.blank(b, e)) continue;
    std::vector<int> row;
    for (auto [cb, ce] : src.split(b, e, ",")) {
      std::string cell = detail::trim(in.substr(cb, ce - cb));
      if (cell != "0" && cell != "1") src.fail(src.first_non_space(cb, ce), "expected 0 or 1");
      row.push_back(cell == "1");
    }
    m.push_back(std::move(row));
  }
  if (m.empty()) throw Error(ErrorCode::InvalidArgument, "empty cell-type matrix");
  DeltaType d = delta_type(m);
  std::vector<std::string> bits;
  for (int x : d.type) bits.push_back(std::to_string(x));
  return {"type (" + join(bits, ",") + "), dim " + std::to_string(d.dimension),
          {{"type", d.type}, {"dimension", d.dimension}}};
}

// ---- decide1 ---------------------------------------------------------------

void collect_atoms(const FormulaPtr& f, std::vector<FormulaPtr>& atoms) {
  if (f->kind == DiffFormula::Kind::And) {
    collect_atoms(f->a, atoms);
    collect_atoms(f->b, atoms);
  } else if (f->kind == DiffFormula::Kind::Atom) {
    atoms.push_back(f);
  } else {
    throw Error(ErrorCode::InvalidArgument, "decide1 accepts conjunctions of atoms only");
  }
}

Result cmd_decide1(const std::string& in) {
  Source src(in);
  std::vector<FormulaPtr> atoms;
  for (auto [b, e] : src.split(0, in.size(), ",\n")) {
    if (src.blank(b, e)) continue;
    collect_atoms(src.parse(b, e, [](std::string_view s) { return parse_formula(s); }), atoms);
  }
  if (atoms.empty()) throw Error(ErrorCode::InvalidArgument, "no constraints given");

  std::optional<Var> var;
  // Each atom offers one or two sign conditions; >= and <= split in two.
  std::vector<std::vector<SignConstraint>> options;
  for (const auto& atom : atoms) {
    RationalFunction d = rewrite_term(term_sub(atom->lhs, atom->rhs)).value;
    if (!d.is_polynomial()) throw Error(ErrorCode::InvalidArgument, "decide1 needs polynomial constraints");
    MultiPoly poly = d.num() * Rational(1 / d.den().constant_term());
    for (const auto& v : poly.vars()) {
      if (var && !(*var == v)) throw Error(ErrorCode::InvalidArgument, "decide1 handles a single variable");
      var = v;
    }
    UniPoly u = UniPoly::from_multipoly(poly);
    using S = SignCondition;
    switch (atom->cmp) {
      case Comparator::Eq: options.push_back({{u, S::Zero}}); break;
      case Comparator::Ne: options.push_back({{u, S::NonZero}}); break;
      case Comparator::Gt: options.push_back({{u, S::Positive}}); break;
      case Comparator::Lt: options.push_back({{u, S::Negative}}); break;
      case Comparator::Ge: options.push_back({{u, S::Positive}, {u, S::Zero}}); break;
      case Comparator::Le: options.push_back({{u, S::Negative}, {u, S::Zero}}); break;
    }
  }
  std::size_t branches = 1;
  for (const auto& o : options) {
    branches *= o.size();
    if (branches > 4096) throw Error(ErrorCode::InvalidArgument, "too many non-strict inequalities");
  }
  std::string name = var ? render(*var, 1) : "x";
  for (std::size_t branch = 0; branch < branches; ++branch) {
    std::vector<SignConstraint> pick;
    std::size_t code = branch;
    for (const auto& o : options) {
      pick.push_back(o[code % o.size()]);
      code /= o.size();
    }
    SturmDecision d = sturm_decide(pick);
    if (!d.sat) continue;
    if (d.witness) {
      return {"SAT, witness " + d.witness->get_str(),
              {{"sat", true}, {"variable", name}, {"witness", rational_json(*d.witness)}}};
    }
    const RealRoot& root = *d.root;
    return {"SAT, witness root of " + root.poly.render(name) + " in (" + root.lo.get_str() + ", " +
                root.hi.get_str() + ")",
            {{"sat", true},
             {"variable", name},
             {"root", {{"polynomial", root.poly.render(name)}, {"lo", rational_json(root.lo)},
                       {"hi", rational_json(root.hi)}}}}};
  }
  return {"UNSAT", {{"sat", false}, {"variable", name}}};
}

// ---- eval ------------------------------------------------------------------

// `name = <value>` assignments given on the command line.
std::pair<std::string, std::string> assignment(const std::string& text) {
  std::size_t eq = text.find('=');
  if (eq == std::string::npos) throw ParseError("expected '<name> = <value>' at 1:1", 1, 1);
  std::string name = detail::trim(std::string_view(text).substr(0, eq));
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])) ||
      name.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_") != std::string::npos)
    throw ParseError("expected a variable name at 1:1", 1, 1);
  return {name, text.substr(eq + 1)};
}

Result cmd_eval(const std::string& in, const std::vector<std::string>& at, const std::vector<std::string>& germ) {
  if (!at.empty() && !germ.empty()) throw Error(ErrorCode::InvalidArgument, "use either --at or --germ");
  if (at.empty() && germ.empty()) throw Error(ErrorCode::InvalidArgument, "eval needs --at or --germ assignments");
  bool formula = looks_like_formula(in);
  if (!germ.empty()) {
    GermPoint pt;
    for (const auto& g : germ) {
      auto [name, value] = assignment(g);
      Source src(g);
      std::size_t off = g.size() - value.size();
      pt.values[name] = src.rf(off, g.size());
    }
    if (formula) {
      bool holds = eval_formula(parse_formula(in), pt);
      return {holds ? "true" : "false", {{"model", "germ"}, {"holds", holds}}};
    }
    RationalFunction v = eval_germ(parse_term(in), pt);
    return {v.render(), {{"model", "germ"}, {"value", v.render()}}};
  }
  if (formula) throw Error(ErrorCode::InvalidArgument, "formulas are evaluated in the germ model (--germ)");
  SeriesPoint pt;
  bool first = true;
  for (const auto& a : at) {
    auto [name, value] = assignment(a);
    TruncatedSeries s = parse_series(value);
    if (first) {
      pt.p = s.p();
      pt.order = s.order();
      first = false;
    } else if (s.p() != pt.p) {
      throw Error(ErrorCode::InvalidArgument, "series in different numbers of variables");
    }
    pt.order = std::min(pt.order, s.order());
    pt.values[name] = s;
  }
  for (auto& [_, s] : pt.values) s = s.truncated(pt.order);
  TruncatedSeries v = eval_diff_term(parse_term(in), pt);
  json coefficients = json::array();
  for (const auto& e : monomials_up_to(v.p(), v.order())) {
    Rational q = v.coefficient(e);
    if (q != 0) coefficients.push_back({{"monomial", e}, {"coefficient", rational_json(q)}});
  }
  return {v.render(), {{"model", "series"}, {"order", v.order()}, {"value", v.render()}, {"terms", coefficients}}};
}

// ---- witness-box -----------------------------------------------------------

Result cmd_witness_box(const std::string& in) {
  Source src(in);
  std::vector<std::pair<Rational, Rational>> box;
  for (const auto& t : src.tuples(0, in.size())) {
    if (t.size() != 2) throw Error(ErrorCode::InvalidArgument, "each interval needs two endpoints");
    box.emplace_back(t[0], t[1]);
  }
  if (box.empty()) throw Error(ErrorCode::InvalidArgument, "empty box");
  MultiPoly a = jet_box_witness(box);
  json jet = json::array();
  for (const auto& [lo, hi] : box) jet.push_back(rational_json((lo + hi) / 2));
  return {"a = " + a.render(), {{"polynomial", a.render()}, {"jet", jet}}};
}

// ---- dispatch --------------------------------------------------------------

bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::QuantifierUnsupported:
    case ErrorCode::HigherDerivationInGermModel:
    case ErrorCode::IdentityInGenerators:
    case ErrorCode::UnknownElement:
    case ErrorCode::InvalidCondition:
    case ErrorCode::EmptyInterval:
    case ErrorCode::InvalidArgument:
      return true;
    default:
      return false;
  }
}

int report(bool as_json, const std::string& command, std::ostream& out, std::ostream& err, const std::string& code,
           const std::string& message, std::optional<std::pair<std::size_t, std::size_t>> pos, int exit_code) {
  if (as_json) {
    json e = {{"code", code}, {"message", message}};
    if (pos) {
      e["line"] = pos->first;
      e["column"] = pos->second;
    }
    json env = {{"command", command}, {"ok", false}, {"error", e}};
    out << env.dump(2) << "\n";
  } else {
    err << "error [" << code << "]: " << message << "\n";
  }
  return exit_code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact differential-algebra toolkit: jets, coherence, formal solutions, real roots.", "odf"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Structured output");

  struct Command {
    CLI::App* app;
    std::string name;
    std::function<Result()> action;
  };
  std::vector<Command> commands;
  Input input;
  std::optional<unsigned> ord, p;
  int deg = -1;
  std::uint64_t seed = 1;
  std::string matrix;
  std::vector<std::string> at, germ;

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("input", input.inline_text, "Inline input");
    sub->add_option("-f,--file", input.file, "Read the input from a file");
    return sub;
  };
  auto deg_or = [&](int fallback) { return deg >= 0 ? deg : fallback; };

  auto* rewrite = with_input(app.add_subcommand("rewrite", "Eliminate derivatives from a term or formula"));
  commands.push_back({rewrite, "rewrite", [&] { return cmd_rewrite(input.load()); }});

  auto* lie = with_input(app.add_subcommand("lie", "Lie bracket of two derivations 'x -> f, ... ; x -> g, ...'"));
  commands.push_back({lie, "lie", [&] { return cmd_lie(input.load()); }});

  auto* coherence = app.add_subcommand("coherence", "Coherence of a condition file");
  coherence->require_subcommand(1);
  auto* co_check = with_input(coherence->add_subcommand("check", "Coherent, or a conflict certificate"));
  co_check->add_option("--ord", ord, "Also probe every theta up to this order");
  commands.push_back({co_check, "coherence check", [&] { return cmd_coherence_check(input.load(), ord); }});
  auto* co_solve = with_input(coherence->add_subcommand("solve", "Truncated series solution"));
  co_solve->add_option("--deg", deg, "Total degree (default 4)")->check(CLI::NonNegativeNumber);
  commands.push_back({co_solve, "coherence solve", [&] { return cmd_coherence_solve(input.load(), deg_or(4)); }});

  auto* singer = app.add_subcommand("singer", "Singer axiom instances");
  singer->require_subcommand(1);
  auto* si_check = with_input(singer->add_subcommand("check", "Check the premise at the witness"));
  commands.push_back({si_check, "singer check", [&] { return cmd_singer_check(input.load()); }});
  auto* si_solve = with_input(singer->add_subcommand("solve", "Formal power-series witness"));
  si_solve->add_option("--deg", deg, "Truncation degree (default 6)")->check(CLI::NonNegativeNumber);
  commands.push_back({si_solve, "singer solve", [&] { return cmd_singer_solve(input.load(), deg_or(6)); }});

  auto* rank = with_input(app.add_subcommand("rank", "rank(A|B) of vectors '(..) (..) | (..)' or functions 'f, g | h'"));
  rank->add_option("--matrix", matrix, "Rows 'a,b;c,d' of a linear map; reports the delta-rank instead");
  rank->add_option("--ord", ord, "Jet depth for the delta-rank (default 8)");
  rank->add_option("--seed", seed, "Seed of the sampled Jacobian rank");
  commands.push_back({rank, "rank", [&] { return cmd_rank(input.load(), matrix, ord, seed); }});

  auto* theta = app.add_subcommand("theta", "Derivative-operator monoid");
  theta->require_subcommand(1);
  for (const char* mode : {"min", "cmp", "join", "meet", "pred", "enum"}) {
    auto* sub = with_input(theta->add_subcommand(mode));
    std::string m = mode;
    if (m == "enum") {
      sub->add_option("--p", p, "Number of derivations");
      sub->add_option("--ord", ord, "Largest order");
    }
    commands.push_back({sub, "theta " + m, [&, m] { return cmd_theta(m, input.load(), p, ord); }});
  }
  theta->get_subcommand("min")->description("Minimal generators of the upward closure");
  theta->get_subcommand("cmp")->description("Total order and divisibility of two elements");
  theta->get_subcommand("join")->description("Componentwise maximum");
  theta->get_subcommand("meet")->description("Componentwise minimum");
  theta->get_subcommand("pred")->description("Immediate predecessors");
  theta->get_subcommand("enum")->description("All elements up to an order, increasing");

  auto* delta_dim = with_input(app.add_subcommand("delta-dim", "Delta-type of a cell-type matrix '1,0;1,1'"));
  commands.push_back({delta_dim, "delta-dim", [&] { return cmd_delta_dim(input.load()); }});

  auto* decide1 = with_input(app.add_subcommand("decide1", "One-variable sign conditions, comma separated"));
  commands.push_back({decide1, "decide1", [&] { return cmd_decide1(input.load()); }});

  auto* eval = with_input(app.add_subcommand("eval", "Evaluate a term in the series or germ model"));
  eval->add_option("--at", at, "name = series(N; ...) or series2(N; [i,j]=c, ...)");
  eval->add_option("--germ", germ, "name = rational function of s");
  commands.push_back({eval, "eval", [&] { return cmd_eval(input.load(), at, germ); }});

  auto* box = with_input(app.add_subcommand("witness-box", "Polynomial whose jet at 0 lies in a box '(lo,hi) ...'"));
  commands.push_back({box, "witness-box", [&] { return cmd_witness_box(input.load()); }});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return report(as_json, "", out, err, "UsageError", e.what(), std::nullopt, kInputError);
  }

  const Command* chosen = nullptr;
  for (const auto& c : commands)
    if (c.app->parsed()) chosen = &c;
  if (!chosen) return report(as_json, "", out, err, "UsageError", "no command given", std::nullopt, kInputError);

  try {
    Result r = chosen->action();
    if (as_json) {
      json env = {{"command", chosen->name}, {"ok", true}, {"result", r.data}};
      out << env.dump(2) << "\n";
    } else {
      out << r.text << "\n";
    }
    return kSuccess;
  } catch (const ParseError& e) {
    return report(as_json, chosen->name, out, err, "ParseError", e.what(), std::pair{e.line(), e.column()},
                  kInputError);
  } catch (const Error& e) {
    return report(as_json, chosen->name, out, err, std::string(to_string(e.code())), e.what(), std::nullopt,
                  is_input_error(e.code()) ? kInputError : kMathError);
  }
}

}  // namespace odf::cli
