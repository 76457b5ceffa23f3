#include "odf/theta.hpp"

#include <algorithm>
#include <cctype>

#include "odf/error.hpp"

namespace odf {

namespace {

void require_same_p(const Theta& a, const Theta& b) {
  if (a.p() != b.p())
    throw Error(ErrorCode::InvalidArgument,
                "derivative operators " + a.render() + " and " + b.render() + " have different arity");
}

}  // namespace

Theta Theta::generator(std::size_t p, std::size_t i) {
  std::vector<std::uint32_t> e(p, 0);
  e.at(i - 1) = 1;
  return Theta(std::move(e));
}

std::uint32_t Theta::order() const noexcept {
  std::uint32_t total = 0;
  for (auto x : e_) total += x;
  return total;
}

std::string Theta::render() const {
  std::string out = "[";
  for (std::size_t k = 0; k < e_.size(); ++k) {
    if (k > 0) out += ',';
    out += std::to_string(e_[k]);
  }
  return out + "]";
}

Theta parse_theta(std::string_view text) {
  auto bad = [&] { return Error(ErrorCode::InvalidArgument, "malformed derivative operator '" + std::string(text) + "'"); };
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i >= text.size() || text[i] != '[') throw bad();
  ++i;
  std::vector<std::uint32_t> e;
  skip();
  if (i < text.size() && text[i] == ']') throw bad();
  while (true) {
    skip();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw bad();
    e.push_back(static_cast<std::uint32_t>(std::stoul(std::string(text.substr(start, i - start)))));
    skip();
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    if (i < text.size() && text[i] == ']') {
      ++i;
      break;
    }
    throw bad();
  }
  skip();
  if (i != text.size()) throw bad();
  return Theta(std::move(e));
}

std::vector<Theta> parse_theta_list(std::string_view text) {
  std::vector<Theta> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t close = text.find(']', i);
    if (close == std::string_view::npos)
      throw Error(ErrorCode::InvalidArgument, "unterminated derivative operator in '" + std::string(text) + "'");
    out.push_back(parse_theta(text.substr(i, close + 1 - i)));
    i = close + 1;
  }
  return out;
}

Theta theta_mul(const Theta& a, const Theta& b) {
  require_same_p(a, b);
  std::vector<std::uint32_t> e(a.p());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = a[k] + b[k];
  return Theta(std::move(e));
}

std::strong_ordering theta_cmp(const Theta& a, const Theta& b) {
  require_same_p(a, b);
  if (auto c = a.order() <=> b.order(); c != 0) return c;
  return a.exponents() <=> b.exponents();
}

bool theta_divides(const Theta& a, const Theta& b) {
  require_same_p(a, b);
  for (std::size_t k = 0; k < a.p(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

Theta theta_join(const Theta& a, const Theta& b) {
  require_same_p(a, b);
  std::vector<std::uint32_t> e(a.p());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = std::max(a[k], b[k]);
  return Theta(std::move(e));
}

Theta theta_meet(const Theta& a, const Theta& b) {
  require_same_p(a, b);
  std::vector<std::uint32_t> e(a.p());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = std::min(a[k], b[k]);
  return Theta(std::move(e));
}

Theta theta_join(const std::vector<Theta>& elements, std::size_t p) {
  Theta out = Theta::identity(p);
  for (const auto& t : elements) out = theta_join(out, t);
  return out;
}

std::size_t successor_index(const Theta& a, const Theta& b) {
  require_same_p(a, b);
  if (b.order() != a.order() + 1 || !theta_divides(a, b)) return 0;
  for (std::size_t k = 0; k < a.p(); ++k)
    if (b[k] != a[k]) return k + 1;
  return 0;
}

std::vector<Theta> predecessors(const Theta& theta) {
  std::vector<Theta> out;
  for (std::size_t k = 0; k < theta.p(); ++k) {
    if (theta[k] == 0) continue;
    auto e = theta.exponents();
    --e[k];
    out.emplace_back(std::move(e));
  }
  // Decrementing an earlier coordinate gives a lexicographically smaller
  // vector, so this is already increasing < order.
  return out;
}

std::vector<Theta> enumerate_theta(std::size_t p, std::uint32_t max_ord) {
  std::vector<Theta> out;
  std::vector<std::uint32_t> e(p, 0);
  // For each order, emit the compositions in increasing lexicographic order.
  for (std::uint32_t ord = 0; ord <= max_ord; ++ord) {
    if (p == 0) {
      if (ord == 0) out.emplace_back(e);
      continue;
    }
    auto rec = [&](auto&& self, std::size_t k, std::uint32_t remaining) -> void {
      if (k + 1 == p) {
        e[k] = remaining;
        out.emplace_back(e);
        return;
      }
      for (std::uint32_t v = 0; v <= remaining; ++v) {
        e[k] = v;
        self(self, k + 1, remaining - v);
      }
    };
    rec(rec, 0, ord);
  }
  return out;
}

Antichain::Antichain(std::vector<Theta> elements, std::size_t p) : elements_(std::move(elements)), p_(p) {
  for (const auto& t : elements_) {
    if (t.p() != p) throw Error(ErrorCode::InvalidArgument, "antichain element " + t.render() + " has wrong arity");
    if (t.is_identity()) throw Error(ErrorCode::InvalidArgument, "antichain contains the identity");
  }
  for (std::size_t i = 0; i < elements_.size(); ++i)
    for (std::size_t j = 0; j < elements_.size(); ++j)
      if (i != j && theta_divides(elements_[i], elements_[j]))
        throw Error(ErrorCode::InvalidArgument,
                    "not an antichain: " + elements_[i].render() + " divides " + elements_[j].render());
  std::sort(elements_.begin(), elements_.end(), [](const Theta& a, const Theta& b) { return theta_cmp(a, b) > 0; });
}

Antichain dickson_min(const std::vector<Theta>& generators, std::size_t p) {
  for (const auto& g : generators)
    if (g.is_identity())
      throw Error(ErrorCode::IdentityInGenerators, "the identity cannot be a generator");
  std::vector<Theta> minimal;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < generators.size() && !dominated; ++j) {
      if (i == j) continue;
      if (generators[j] == generators[i]) {
        dominated = j < i;  // keep the first copy of duplicates
      } else {
        dominated = theta_divides(generators[j], generators[i]);
      }
    }
    if (!dominated) minimal.push_back(generators[i]);
  }
  return Antichain(std::move(minimal), p);
}

bool ThetaPartition::in_B(const Theta& theta) const {
  for (const auto& beta : P_.elements())
    if (theta_divides(beta, theta)) return true;
  return false;
}

bool ThetaPartition::in_P(const Theta& theta) const {
  return std::find(P_.elements().begin(), P_.elements().end(), theta) != P_.elements().end();
}

Theta ThetaPartition::least_generator_below(const Theta& theta) const {
  // elements() is in decreasing order; the last match is the <-least.
  const Theta* best = nullptr;
  for (const auto& beta : P_.elements())
    if (theta_divides(beta, theta)) best = &beta;
  if (!best) throw Error(ErrorCode::InvalidArgument, theta.render() + " is not in the upward closure of P");
  return *best;
}

}  // namespace odf
