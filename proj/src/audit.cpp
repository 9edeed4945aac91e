#include "wiresafe/audit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace wiresafe {

// -- Rational / Entropy --------------------------------------------------------

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const auto g = std::gcd(num < 0 ? -num : num, den);
  return g > 1 ? Rational{num / g, den / g} : Rational{num, den};
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational operator-(const Rational& a, const Rational& b) {
  const auto l = std::lcm(a.den, b.den);
  return Rational::make(a.num * (l / a.den) - b.num * (l / b.den), l);
}

Rational operator+(const Rational& a, const Rational& b) {
  const auto l = std::lcm(a.den, b.den);
  return Rational::make(a.num * (l / a.den) + b.num * (l / b.den), l);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

Entropy entropy_from_counts(const std::vector<std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  Entropy h;
  if (total == 0) return h;
  // exact when every probability c / N is a power of 1/2
  bool dyadic = true;
  double acc = 0;
  for (auto c : counts) {
    if (c == 0) continue;
    dyadic = dyadic && total % c == 0 && std::has_single_bit(total / c);
    acc += static_cast<double>(c) * std::log2(static_cast<double>(total) / static_cast<double>(c));
  }
  h.approx = acc / static_cast<double>(total);
  h.exact = dyadic;
  if (h.exact) {
    std::int64_t num = 0;
    for (auto c : counts)
      if (c != 0) num += static_cast<std::int64_t>(c) * std::countr_zero(total / c);
    h.bits = Rational::make(num, static_cast<std::int64_t>(total));
    h.approx = h.bits.to_double();
  }
  return h;
}

Entropy operator-(const Entropy& a, const Entropy& b) {
  Entropy h;
  h.exact = a.exact && b.exact;
  if (h.exact) {
    h.bits = a.bits - b.bits;
    h.approx = h.bits.to_double();
  } else {
    h.approx = a.approx - b.approx;
  }
  return h;
}

// -- joint distribution ----------------------------------------------------------

namespace {

struct WordsHash {
  std::size_t operator()(const std::vector<Word>& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto w : v) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

struct PairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const noexcept {
    return static_cast<std::size_t>(p.first * 0x9e3779b97f4a7c15ULL ^ (p.second + 0x632be59bd9b4e019ULL));
  }
};

// Writes the base-2^m digits of id into v.
void fill_from_index(ExtVector& v, int m, std::uint64_t id) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = m >= 64 ? id : (id & ((Word{1} << m) - 1));
    id = m >= 64 ? 0 : (id >> m);
  }
}

}  // namespace

ExtVector message_from_index(const FieldSpec& spec, std::size_t k, std::uint64_t id) {
  ExtVector v(spec, k);
  fill_from_index(v, spec.m(), id);
  return v;
}

std::uint64_t JointDistribution::count(std::uint64_t s_id, std::uint64_t w_id) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), std::make_tuple(s_id, w_id, std::uint64_t{0}));
  if (it != entries.end() && std::get<0>(*it) == s_id && std::get<1>(*it) == w_id) return std::get<2>(*it);
  return 0;
}

std::optional<std::uint64_t> JointDistribution::observation_id(const std::vector<Word>& w) const {
  auto it = std::find(observations.begin(), observations.end(), w);
  if (it == observations.end()) return std::nullopt;
  return static_cast<std::uint64_t>(it - observations.begin());
}

JointDistribution joint_distribution(const CosetScheme& scheme, const ExtMatrix& observation, std::uint64_t budget) {
  const FieldSpec& f = scheme.spec();
  if (!(observation.spec() == f)) throw Error("observation matrix is over a different field");
  if (observation.cols() != scheme.n()) throw Error("observation matrix must have n columns");
  const auto m = static_cast<std::uint64_t>(f.m());
  require_budget("joint distribution enumeration", pow2_saturating(m * scheme.n()), budget);

  JointDistribution jd;
  jd.message_count = std::uint64_t{1} << (m * scheme.k());
  const std::uint64_t draws = std::uint64_t{1} << (m * scheme.mu());
  jd.total = jd.message_count * draws;
  jd.s_marginal.assign(jd.message_count, 0);

  std::unordered_map<std::vector<Word>, std::uint64_t, WordsHash> w_ids;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t, PairHash> joint;
  std::unordered_map<std::vector<Word>, std::uint64_t, WordsHash> x_seen;
  std::unordered_map<std::vector<Word>, std::uint64_t, WordsHash> x_message;

  ExtVector s(f, scheme.k());
  ExtVector r(f, scheme.mu());
  std::vector<Word> key;
  for (std::uint64_t s_id = 0; s_id < jd.message_count; ++s_id) {
    fill_from_index(s, f.m(), s_id);
    for (std::uint64_t r_id = 0; r_id < draws; ++r_id) {
      fill_from_index(r, f.m(), r_id);
      const ExtVector x = scheme.encode_with(s, r);
      const ExtVector w = multiply(observation, x);

      key.assign(w.values().begin(), w.values().end());
      auto [it, inserted] = w_ids.try_emplace(key, jd.observations.size());
      if (inserted) {
        jd.observations.push_back(key);
        jd.w_marginal.push_back(0);
      }
      ++jd.w_marginal[it->second];
      ++jd.s_marginal[s_id];
      ++joint[{s_id, it->second}];

      key.assign(x.values().begin(), x.values().end());
      ++x_seen[key];
      auto [mt, fresh] = x_message.try_emplace(key, s_id);
      if (!fresh && mt->second != s_id) jd.x_determines_s = false;
    }
  }
  jd.entries.reserve(joint.size());
  for (const auto& [sw, c] : joint) jd.entries.emplace_back(sw.first, sw.second, c);
  std::sort(jd.entries.begin(), jd.entries.end());
  jd.x_counts.reserve(x_seen.size());
  for (const auto& [x, c] : x_seen) jd.x_counts.push_back(c);
  std::sort(jd.x_counts.begin(), jd.x_counts.end());
  return jd;
}

// -- stack conditions ------------------------------------------------------------

ReducedObservation reduce_rank_deficient(const ExtMatrix& b) {
  ExtMatrix kept(b.spec(), 0, b.cols());
  for (std::size_t r = 0; r < b.rows(); ++r) {
    ExtMatrix row(b.spec(), 1, b.cols(), std::vector<Word>(b.row(r).begin(), b.row(r).end()));
    ExtMatrix candidate = stack(kept, row);
    if (rank_ext(candidate) == candidate.rows()) kept = std::move(candidate);
  }
  const auto mu = kept.rows();
  return {std::move(kept), mu};
}

BaseMatrix reduce_rank_deficient(const BaseMatrix& b) {
  BaseMatrix kept(0, b.cols());
  for (std::size_t r = 0; r < b.rows(); ++r) {
    BaseMatrix candidate = kept;
    candidate.append_row(b.row(r));
    if (rank_base_matrix(candidate) == candidate.rows()) kept = std::move(candidate);
  }
  return kept;
}

namespace {
void require_square_stack(const ExtMatrix& h, std::size_t b_rows, std::size_t b_cols) {
  if (b_cols != h.cols()) throw Error("B must have n = " + std::to_string(h.cols()) + " columns");
  if (h.rows() + b_rows != h.cols())
    throw Error("stack [H; B] must be square: rows(H) + rows(B) = " + std::to_string(h.rows() + b_rows) +
                ", n = " + std::to_string(h.cols()));
}
}  // namespace

bool check_stack_nonsingular(const ExtMatrix& h, const BaseMatrix& b) { return check_stack_condition(h, b); }

bool check_stack_condition(const ExtMatrix& h, const BaseMatrix& b) {
  require_square_stack(h, b.rows(), b.cols());
  return rank_ext(stack(h, ExtMatrix::embed(h.spec(), b))) == h.cols();
}

bool check_stack_condition(const ExtMatrix& h, const ExtMatrix& b) {
  require_square_stack(h, b.rows(), b.cols());
  return rank_ext(stack(h, b)) == h.cols();
}

std::optional<BaseMatrix> find_singular_stack(const ExtMatrix& h, std::uint64_t budget) {
  if (h.rows() > h.cols()) throw Error("parity-check matrix has more rows than columns");
  std::optional<BaseMatrix> found;
  for_each_full_rank(h.cols() - h.rows(), h.cols(), budget, [&](const BaseMatrix& b) {
    if (!check_stack_condition(h, b)) found = b;
    return !found;
  });
  return found;
}

std::optional<ExtMatrix> find_singular_stack_over_field(const ExtMatrix& h, std::uint64_t budget) {
  if (h.rows() > h.cols()) throw Error("parity-check matrix has more rows than columns");
  const FieldSpec& f = h.spec();
  const std::size_t mu = h.cols() - h.rows();
  const std::size_t cells = mu * h.cols();
  require_budget("field-valued observation enumeration", pow2_saturating(static_cast<std::uint64_t>(f.m()) * cells),
                 budget);
  ExtMatrix b(f, mu, h.cols());
  std::vector<Word> data(cells, 0);
  while (true) {
    b = ExtMatrix(f, mu, h.cols(), data);
    if (rank_ext(b) == mu && !check_stack_condition(h, b)) return b;
    std::size_t i = 0;
    while (i < cells && data[i] == f.mask()) data[i++] = 0;
    if (i == cells) return std::nullopt;
    ++data[i];
  }
}

// -- audits ----------------------------------------------------------------------

SecrecyEntry exhaustive_secrecy(const CosetScheme& scheme, const ExtMatrix& b, std::uint64_t budget) {
  const JointDistribution jd = joint_distribution(scheme, b, budget);
  auto reduced = reduce_rank_deficient(b);

  SecrecyEntry e{.edges = {}, .b = b, .b_reduced = reduced.b_full};
  e.rank_b = reduced.mu_eff;
  e.stack_nonsingular = rank_ext(stack(scheme.parity_check(), reduced.b_full)) == scheme.k() + reduced.mu_eff;
  e.pairs = jd.total;

  std::vector<std::uint64_t> joint_counts;
  joint_counts.reserve(jd.entries.size());
  for (const auto& [s, w, c] : jd.entries) joint_counts.push_back(c);
  e.h_s = entropy_from_counts(jd.s_marginal);
  e.h_s_given_w = entropy_from_counts(joint_counts) - entropy_from_counts(jd.w_marginal);
  e.h_x = entropy_from_counts(jd.x_counts);
  if (jd.x_determines_s) {
    e.h_s_given_x = Entropy{};
  } else {
    e.h_s_given_x.exact = false;
    e.h_s_given_x.approx = std::nan("");
  }

  // independent iff every s co-occurs with every observed w, with N(s,w) N = N(s) N(w)
  const auto messages_present = static_cast<std::uint64_t>(
      std::count_if(jd.s_marginal.begin(), jd.s_marginal.end(), [](auto c) { return c != 0; }));
  std::vector<std::uint64_t> per_w(jd.observations.size(), 0);
  bool independent = true;
  for (const auto& [s, w, c] : jd.entries) {
    ++per_w[w];
    const auto lhs = static_cast<unsigned __int128>(c) * jd.total;
    const auto rhs = static_cast<unsigned __int128>(jd.s_marginal[s]) * jd.w_marginal[w];
    if (lhs != rhs) independent = false;
  }
  for (auto n : per_w)
    if (n != messages_present) independent = false;
  e.independent = independent;
  return e;
}

SecrecyEntry exhaustive_secrecy(const CosetScheme& scheme, const BaseMatrix& b, std::uint64_t budget) {
  return exhaustive_secrecy(scheme, ExtMatrix::embed(scheme.spec(), b), budget);
}

namespace {
void record(SecrecyReport& report, SecrecyEntry entry) {
  if (!entry.independent) {
    report.secure = false;
    report.failures.push_back(report.entries.size());
  }
  if (!entry.stack_nonsingular) ++report.singular_stacks;
  report.entries.push_back(std::move(entry));
  ++report.sets_audited;
}
}  // namespace

SecrecyReport audit_full_rank(const CosetScheme& scheme, std::size_t mu, const Budget& budget) {
  if (mu > scheme.n()) throw Error("mu exceeds n");
  require_budget("full-rank observation audit", count_full_rank(mu, scheme.n()), budget.wiretap_sets);
  SecrecyReport report;
  for_each_full_rank(mu, scheme.n(), budget.enumeration, [&](const BaseMatrix& b) {
    record(report, exhaustive_secrecy(scheme, b, budget.joint));
    return true;
  });
  return report;
}

SecrecyReport audit_network(const LinearNetworkCode& code, const CosetScheme& scheme, std::size_t mu,
                            const Budget& budget) {
  if (code.n() != scheme.n())
    throw Error("network carries " + std::to_string(code.n()) + " packets but the scheme emits " +
                std::to_string(scheme.n()));
  const auto& edges = code.network().edges();
  const std::size_t l = edges.size();
  if (mu > l) throw Error("mu exceeds the number of edges");

  std::uint64_t sets = 1;
  for (std::size_t i = 0; i < mu; ++i) {
    sets = mul_saturating(sets, l - i);
    if (sets != UINT64_MAX) sets /= (i + 1);
  }
  require_budget("wiretap set enumeration", sets, budget.wiretap_sets);
  // fail before doing any work if a single set is already too large
  require_budget("joint distribution enumeration",
                 pow2_saturating(static_cast<std::uint64_t>(scheme.spec().m()) * scheme.n()), budget.joint);

  SecrecyReport report;
  std::vector<std::size_t> pick(mu);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::vector<int> ids;
    for (auto p : pick) ids.push_back(edges[p].id);
    SecrecyEntry entry = exhaustive_secrecy(scheme, wiretap_matrix(code, ids), budget.joint);
    entry.edges = std::move(ids);
    record(report, std::move(entry));

    std::size_t i = mu;
    while (i > 0 && pick[i - 1] == l - mu + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < mu; ++j) pick[j] = pick[j - 1] + 1;
  }
  return report;
}

}  // namespace wiresafe
