#include "setnorm/mr.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "json.hpp"

namespace setnorm {

namespace {

// Certified interval of 2 * sum_i sqrt(w_i / c) over the given prefix.
QInterval level_sum(const std::vector<Int>& prefix, const Int& c,
                    unsigned prec) {
  QInterval acc;
  for (const Int& w : prefix) {
    QInterval s = sqrt_enclosure(Rat(w, c), prec);
    acc += s;
  }
  return acc.scaled(Rat(2));
}

}  // namespace

Rat lacunary_slack(const std::vector<Int>& weights, unsigned prec_bits) {
  QInterval total;
  for (std::size_t j = 1; j < weights.size(); ++j) {
    std::vector<Int> prefix(weights.begin(), weights.begin() + j);
    total += level_sum(prefix, weights[j], prec_bits);
  }
  return Rat(1) - total.hi;
}

LacunarySet lacunary_set(std::uint32_t n, std::size_t count) {
  if (count < 1) throw std::invalid_argument("lacunary_set: count >= 1");
  LacunarySet out;
  out.weights.push_back(Int(std::max<std::uint32_t>(n, 1)));
  if (count == 1) {
    out.slack_lo = 1;
    return out;
  }
  Rat allowance(1, static_cast<long>(count - 1));
  for (std::size_t j = 1; j < count; ++j) {
    const std::vector<Int>& prefix = out.weights;
    // certified predicate: level contribution of candidate c stays within
    // the allowance
    auto ok = [&](const Int& c) {
      unsigned prec = 96;
      while (true) {
        QInterval s = level_sum(prefix, c, prec);
        if (s.hi <= allowance) return true;
        if (s.lo > allowance) return false;
        if (prec > 2048)
          throw std::runtime_error("lacunary_set: undecided allowance check");
        prec *= 2;
      }
    };
    // monotone in c: grow an upper bound, then binary search the least ok c
    Int lo = out.weights.back() + 1;
    Int hi = lo;
    while (!ok(hi)) hi *= 2;
    while (lo < hi) {
      Int mid = (lo + hi) / 2;
      if (ok(mid))
        hi = mid;
      else
        lo = mid + 1;
    }
    out.weights.push_back(lo);
  }
  out.slack_lo = lacunary_slack(out.weights);
  if (out.slack_lo < 0)
    throw std::logic_error("lacunary_set: generated set fails re-verification");
  return out;
}

void SqrtSum::add(const Rat& coeff, const Int& under_sqrt) {
  if (coeff == 0) return;
  if (under_sqrt <= 0) throw std::invalid_argument("SqrtSum: radicand must be positive");
  Int root;
  if (is_perfect_square(under_sqrt, root)) {
    rational += coeff / Rat(root);
    return;
  }
  Rat& slot = radicals[under_sqrt];
  slot += coeff;
  if (slot == 0) radicals.erase(under_sqrt);
}

SqrtSum& SqrtSum::operator+=(const SqrtSum& o) {
  rational += o.rational;
  for (const auto& [w, c] : o.radicals) {
    Rat& slot = radicals[w];
    slot += c;
    if (slot == 0) radicals.erase(w);
  }
  return *this;
}

QInterval SqrtSum::enclosure(unsigned prec_bits) const {
  QInterval acc(rational);
  for (const auto& [w, c] : radicals)
    acc += inv_sqrt_enclosure(Rat(w), prec_bits).scaled(c);
  return acc;
}

MrVector::MrVector(std::vector<WeightedRun> runs) : runs_(std::move(runs)) {
  std::erase_if(runs_, [](const WeightedRun& r) {
    return r.coeff == 0 || r.lo >= r.hi;
  });
  std::sort(runs_.begin(), runs_.end(),
            [](const WeightedRun& a, const WeightedRun& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < runs_.size(); ++i)
    if (runs_[i - 1].hi > runs_[i].lo)
      throw std::invalid_argument("MrVector: overlapping runs");
  for (const auto& r : runs_)
    if (r.weight <= 0) throw std::invalid_argument("MrVector: weight must be positive");
}

MrVector MrVector::from_qvector(const QVector& x) {
  std::vector<WeightedRun> runs;
  for (const auto& [g, c] : x.entries())
    runs.push_back({Int(g), Int(g) + 1, c, Int(1)});
  return MrVector(std::move(runs));
}

MrVector MrVector::block(const IntervalSet& piece, const Rat& coeff,
                         const Int& weight) {
  std::vector<WeightedRun> runs;
  for (const auto& [lo, hi] : piece.runs()) runs.push_back({lo, hi, coeff, weight});
  return MrVector(std::move(runs));
}

MrVector MrVector::concat(const MrVector& o) const {
  std::vector<WeightedRun> runs = runs_;
  runs.insert(runs.end(), o.runs_.begin(), o.runs_.end());
  return MrVector(std::move(runs));
}

MrVector MrVector::negated() const {
  MrVector r = *this;
  for (auto& run : r.runs_) run.coeff = -run.coeff;
  return r;
}

IntervalSet MrVector::support() const {
  std::vector<std::pair<Int, Int>> runs;
  for (const auto& r : runs_) runs.emplace_back(r.lo, r.hi);
  return IntervalSet::from_runs(std::move(runs));
}

SqrtSum MrVector::l1() const {
  SqrtSum s;
  for (const auto& r : runs_) s.add(rat_abs(r.coeff) * Rat(r.hi - r.lo), r.weight);
  return s;
}

SqrtSum MrVector::dot_block(const IntervalSet& t, const Int& m) const {
  SqrtSum s;
  for (const auto& r : runs_) {
    Int overlap = t.intersection_size(IntervalSet::interval(r.lo, r.hi));
    if (overlap != 0) s.add(r.coeff * Rat(overlap), r.weight * m);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Instances

MrInstance MrInstance::bn_stack(RhoStack stack, std::size_t palette_count) {
  if (stack.ground_size > 24)
    throw std::invalid_argument("bn_stack: ground segment too large to enumerate");
  MrInstance inst;
  inst.kind_ = Kind::BnStack;
  inst.ground_ = stack.ground_size;
  inst.n_ = stack.depth;
  LacunarySet lac = lacunary_set(stack.depth, palette_count);
  inst.weights_ = lac.weights;
  inst.slack_lo_ = lac.slack_lo;
  inst.fi_ = std::make_shared<FiTable>(std::move(stack));
  inst.build_bn_tokens();
  return inst;
}

MrInstance MrInstance::segment_chain(std::uint32_t n, std::size_t length,
                                     const Int& headroom) {
  MrInstance inst;
  inst.kind_ = Kind::SegmentChain;
  inst.n_ = n;
  LacunarySet lac = lacunary_set(n, length);
  inst.weights_ = lac.weights;
  inst.slack_lo_ = lac.slack_lo;
  inst.chain_.push_back(0);
  for (const Int& m : inst.weights_) inst.chain_.push_back(inst.chain_.back() + m);
  inst.ground_ = inst.chain_.back() + headroom;
  return inst;
}

const FiTable& MrInstance::fi() const {
  if (!fi_) throw std::logic_error("MrInstance: no stack on this kind");
  return *fi_;
}

void MrInstance::build_bn_tokens() {
  // Reachable-union breadth-first walk; tokens are indexed in first-appearance
  // order, which puts the colors a short special sequence needs at the front
  // of the weight list.
  std::uint32_t g = ground_.convert_to<std::uint32_t>();
  std::map<CnToken, std::size_t> token_index;
  std::deque<FinSet> queue;
  CnToken empty_tok = cn_color(FinSet{}, *fi_);
  token_index[empty_tok] = 0;
  union_color_[FinSet{}] = 0;
  queue.push_back(FinSet{});
  while (!queue.empty()) {
    FinSet u = queue.front();
    queue.pop_front();
    std::size_t idx = union_color_.at(u);
    if (idx >= weights_.size()) continue;  // no materialized color to extend by
    const Int& m = weights_[idx];
    std::uint32_t start = u.empty() ? 0 : u.max() + 1;
    if (m > Int(g - start)) continue;  // no room for the forced size
    std::uint32_t m32 = m.convert_to<std::uint32_t>();
    std::vector<std::uint32_t> window;
    for (std::uint32_t v = start; v < g; ++v) window.push_back(v);
    for (const auto& t : subsets_of_size(FinSet(window), m32)) {
      FinSet next = u.set_union(t);
      if (union_color_.count(next)) continue;
      if (!bn_member(next, *fi_)) continue;
      CnToken tok = cn_color(next, *fi_);
      auto [it, fresh] = token_index.try_emplace(tok, token_index.size());
      union_color_[next] = it->second;
      queue.push_back(next);
    }
  }
}

std::optional<std::size_t> MrInstance::color_index(const IntervalSet& u) const {
  if (kind_ == Kind::BnStack) {
    auto f = u.to_finset();
    if (!f) return std::nullopt;
    auto it = union_color_.find(*f);
    if (it == union_color_.end() || it->second >= weights_.size())
      return std::nullopt;
    return it->second;
  }
  if (u.empty()) return 0;
  if (u.runs().size() != 1 || u.min() != 0) return std::nullopt;
  Int hi = u.runs().front().second;
  for (std::size_t i = 1; i + 1 <= chain_.size(); ++i)
    if (chain_[i] == hi)
      return i < weights_.size() ? std::optional<std::size_t>(i) : std::nullopt;
  return std::nullopt;
}

bool MrInstance::in_family(const IntervalSet& u) const {
  if (kind_ == Kind::BnStack) {
    auto f = u.to_finset();
    return f && bn_member(*f, *fi_);
  }
  if (u.empty()) return true;
  if (u.runs().size() != 1 || u.min() != 0) return false;
  Int hi = u.runs().front().second;
  for (const Int& a : chain_)
    if (a == hi) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Special-sequence enumeration (enumerable instances)

std::vector<SpecialSeq> enumerate_special(const MrInstance& inst,
                                          const FinSet& ground, std::size_t d) {
  if (inst.kind() != MrInstance::Kind::BnStack)
    throw std::invalid_argument(
        "enumerate_special: instance is not element-enumerable");
  std::vector<SpecialSeq> out;
  std::vector<IntervalSet> terms;
  auto rec = [&](auto&& self, const FinSet& u, std::int64_t last) -> void {
    if (terms.size() == d) {
      out.push_back({terms});
      return;
    }
    auto idx = inst.color_index(IntervalSet::from_finset(u));
    if (!idx) return;
    std::uint32_t m = inst.weights()[*idx].convert_to<std::uint32_t>();
    std::vector<std::uint32_t> window;
    for (std::uint32_t v : ground.elems())
      if (static_cast<std::int64_t>(v) > last) window.push_back(v);
    for (const auto& t : subsets_of_size(FinSet(window), m)) {
      FinSet next = u.set_union(t);
      bool is_last = terms.size() + 1 == d;
      if (!is_last && !inst.color_index(IntervalSet::from_finset(next))) continue;
      terms.push_back(IntervalSet::from_finset(t));
      self(self, next, t.max());
      terms.pop_back();
    }
  };
  rec(rec, FinSet{}, -1);
  return out;
}

// ---------------------------------------------------------------------------
// Norm engine

namespace {

// exact comparison of unit values a/sqrt(u) vs b/sqrt(v)
bool unit_less(const Rat& a, const Int& u, const Rat& b, const Int& v) {
  int sa = a > 0 ? 1 : (a < 0 ? -1 : 0);
  int sb = b > 0 ? 1 : (b < 0 ? -1 : 0);
  if (sa != sb) return sa < sb;
  if (sa == 0) return false;
  Rat lhs = a * a * Rat(v), rhs = b * b * Rat(u);
  if (sa > 0) return lhs < rhs;
  return lhs > rhs;
}

struct Engine {
  const MrInstance& inst;
  const Rat& tol;
  std::optional<Int> cutoff;
  unsigned prec;

  std::map<std::pair<std::vector<std::uint32_t>, std::int64_t>, QInterval>
      memo_bn;
  std::map<std::size_t, QInterval> memo_chain;

  Engine(const MrInstance& i, const Rat& t, std::optional<Int> c, unsigned p)
      : inst(i), tol(t), cutoff(std::move(c)), prec(p) {}

  // Best single free term of size m placed above `from` against the signed
  // vector x: positive mass first (largest unit values), zero coordinates
  // next, then the least harmful negative mass. Returns the value and the
  // chosen set; nullopt when no size-m set fits above `from`.
  std::optional<std::pair<SqrtSum, IntervalSet>> best_free(const MrVector& x,
                                                           const Int& m,
                                                           const Int& from) {
    if (inst.ground() - from < m) return std::nullopt;
    struct Unit {
      Rat coeff;
      Int weight;
      Int lo, hi;  // clipped run
    };
    std::vector<Unit> units;
    for (const auto& r : x.runs()) {
      Int lo = std::max(r.lo, from), hi = std::min(r.hi, inst.ground());
      if (lo < hi) units.push_back({r.coeff, r.weight, lo, hi});
    }
    std::sort(units.begin(), units.end(), [](const Unit& a, const Unit& b) {
      if (unit_less(b.coeff, b.weight, a.coeff, a.weight)) return true;
      if (unit_less(a.coeff, a.weight, b.coeff, b.weight)) return false;
      return a.lo < b.lo;
    });
    // zero-coordinate capacity: the window minus the covered runs
    IntervalSet window = IntervalSet::interval(from, inst.ground());
    IntervalSet covered;
    for (const auto& u : units)
      covered = covered.unite(IntervalSet::interval(u.lo, u.hi));
    std::vector<std::pair<Int, Int>> free_runs;
    {
      Int at = from;
      for (const auto& [lo, hi] : covered.runs()) {
        if (at < lo) free_runs.emplace_back(at, lo);
        at = hi;
      }
      if (at < inst.ground()) free_runs.emplace_back(at, inst.ground());
    }

    SqrtSum acc;
    std::vector<std::pair<Int, Int>> chosen;
    Int need = m;
    auto take_unit = [&](const Unit& u) {
      if (need == 0) return;
      Int take = std::min(Int(u.hi - u.lo), need);
      acc.add(u.coeff * Rat(take), u.weight * m);
      chosen.emplace_back(u.lo, u.lo + take);
      need -= take;
    };
    for (const auto& u : units)
      if (u.coeff > 0) take_unit(u);
    for (const auto& [lo, hi] : free_runs) {
      if (need == 0) break;
      Int take = std::min(Int(hi - lo), need);
      chosen.emplace_back(lo, lo + take);
      need -= take;
    }
    for (const auto& u : units)
      if (u.coeff <= 0) take_unit(u);
    if (need > 0) return std::nullopt;
    return std::make_pair(std::move(acc), IntervalSet::from_runs(std::move(chosen)));
  }

  QInterval tail_interval(const MrVector& x, const Int& from) {
    // every remaining functional term scores at most l1(x above from)/sqrt(W)
    if (!cutoff) throw std::logic_error("tail_interval without cutoff");
    SqrtSum mass;
    for (const auto& r : x.runs()) {
      Int lo = std::max(r.lo, from), hi = r.hi;
      if (lo < hi) mass.add(rat_abs(r.coeff) * Rat(hi - lo), r.weight);
    }
    QInterval l1 = mass.enclosure(prec);
    QInterval inv = inv_sqrt_enclosure(Rat(*cutoff), prec);
    Rat bound = l1.hi * inv.hi;
    if (bound > tol / 2)
      throw std::runtime_error(
          "mr_norm: tolerance unreachable at the configured weight cutoff");
    return QInterval(Rat(0), bound);
  }

  QInterval value_bn(const MrVector& x, const FinSet& u, std::int64_t last) {
    auto key = std::make_pair(u.elems(), last);
    auto it = memo_bn.find(key);
    if (it != memo_bn.end()) return it->second;
    QInterval best(Rat(0));
    auto idx = inst.color_index(IntervalSet::from_finset(u));
    if (idx) {
      const Int& m = inst.weights()[*idx];
      if (cutoff && m > *cutoff) {
        best = QInterval::max(best, tail_interval(x, Int(last + 1)));
      } else {
        std::uint32_t g = inst.ground().convert_to<std::uint32_t>();
        if (m <= Int(g) - Int(last + 1)) {
          std::uint32_t m32 = m.convert_to<std::uint32_t>();
          std::vector<std::uint32_t> window;
          for (std::uint32_t v = static_cast<std::uint32_t>(last + 1); v < g; ++v)
            window.push_back(v);
          for (const auto& t : subsets_of_size(FinSet(window), m32)) {
            IntervalSet ts = IntervalSet::from_finset(t);
            QInterval c = x.dot_block(ts, m).enclosure(prec);
            FinSet next = u.set_union(t);
            QInterval branch = c;
            if (inst.color_index(IntervalSet::from_finset(next))) {
              QInterval cont = value_bn(x, next, t.max());
              branch = c + QInterval::max(cont, QInterval(Rat(0)));
            }
            best = QInterval::max(best, branch);
          }
        }
      }
    }
    memo_bn.emplace(key, best);
    return best;
  }

  QInterval value_chain(const MrVector& x, std::size_t i) {
    auto it = memo_chain.find(i);
    if (it != memo_chain.end()) return it->second;
    QInterval best(Rat(0));
    if (i < inst.weights().size()) {
      const Int& m = inst.weights()[i];
      const Int& a_i = inst.chain()[i];
      if (cutoff && m > *cutoff) {
        best = QInterval::max(best, tail_interval(x, a_i));
      } else {
        auto free = best_free(x, m, a_i);
        if (free) best = QInterval::max(best, free->first.enclosure(prec));
        if (i + 1 < inst.chain().size()) {
          const Int& a_next = inst.chain()[i + 1];
          IntervalSet forced = IntervalSet::interval(a_i, a_next);
          QInterval c = x.dot_block(forced, m).enclosure(prec);
          QInterval cont = value_chain(x, i + 1);
          best = QInterval::max(best, c + QInterval::max(cont, QInterval(Rat(0))));
        }
      }
    }
    memo_chain.emplace(i, best);
    return best;
  }

  QInterval functional_sup(const MrVector& x) {
    memo_bn.clear();
    memo_chain.clear();
    if (inst.kind() == MrInstance::Kind::BnStack)
      return value_bn(x, FinSet{}, -1);
    return value_chain(x, 0);
  }
};

QInterval linf_interval(const MrVector& x, unsigned prec) {
  QInterval best(Rat(0));
  for (const auto& r : x.runs()) {
    SqrtSum s;
    s.add(rat_abs(r.coeff), r.weight);
    best = QInterval::max(best, s.enclosure(prec));
  }
  return best;
}

}  // namespace

NormEnclosure mr_norm(const MrVector& x, const MrInstance& inst, const Rat& tol,
                      std::optional<Int> cutoff) {
  if (tol <= 0) throw std::invalid_argument("mr_norm: tol must be positive");
  if (!x.empty() && (x.support().min() < 0 || x.support().max() >= inst.ground()))
    throw std::invalid_argument("mr_norm: support outside the instance ground");
  for (unsigned prec = 96; prec <= 4096; prec *= 2) {
    Engine eng(inst, tol, cutoff, prec);
    QInterval v = linf_interval(x, prec);
    v = QInterval::max(v, eng.functional_sup(x));
    v = QInterval::max(v, eng.functional_sup(x.negated()));
    if (v.width() <= tol) return {v.lo, v.hi, tol};
  }
  throw std::runtime_error("mr_norm: tolerance not reached at maximum precision");
}

NormEnclosure mr_norm(const QVector& x, const MrInstance& inst, const Rat& tol) {
  return mr_norm(MrVector::from_qvector(x), inst, tol);
}

// ---------------------------------------------------------------------------
// Witness pair

namespace {

// The bound-chain decomposition of <g, x> for a competing functional g
// against the alternating witness built on (s_i): leading fully-matched
// terms, the same-size diverged middle, and everything else.
WitnessParts decompose(const std::vector<IntervalSet>& s_terms,
                       const std::vector<IntervalSet>& g_terms, unsigned prec) {
  WitnessParts parts;
  std::size_t k = s_terms.size(), d = g_terms.size();
  // m0: the last index at which the size profiles still agree (terms below it
  // form the unions the position analysis applies to).
  std::size_t agree = 0;
  while (agree < std::min(k, d) && s_terms[agree].size() == g_terms[agree].size())
    ++agree;
  std::ptrdiff_t m0 = static_cast<std::ptrdiff_t>(agree) - 1;

  // common initial segment of the two unions below m0
  IntervalSet su, tu;
  for (std::ptrdiff_t i = 0; i < m0; ++i) {
    su = su.unite(s_terms[i]);
    tu = tu.unite(g_terms[i]);
  }
  IntervalSet root;
  {
    std::vector<std::pair<Int, Int>> common;
    const auto& ra = su.runs();
    const auto& rb = tu.runs();
    for (std::size_t i = 0; i < std::min(ra.size(), rb.size()); ++i) {
      if (ra[i].first != rb[i].first) break;
      if (ra[i].second == rb[i].second) {
        common.push_back(ra[i]);
        continue;
      }
      common.emplace_back(ra[i].first, std::min(ra[i].second, rb[i].second));
      break;
    }
    root = IntervalSet::from_runs(std::move(common));
  }

  std::ptrdiff_t i0 = -1;
  for (std::ptrdiff_t i = 0; i < m0; ++i)
    if (s_terms[i].subset_of(root)) i0 = i;

  // head: fully matched alternating block (terms below i0 coincide)
  Rat head_sum(0);
  for (std::ptrdiff_t i = 0; i <= i0; ++i)
    head_sum += (i % 2 == 0) ? Rat(1) : Rat(-1);
  parts.head = rat_abs(head_sum);

  // middle: index-matched diverged terms strictly between i0 and m0,
  // bounded by their union overlap over |s_{i0}|
  parts.middle = 0;
  if (i0 >= 0 && i0 + 1 < m0) {
    IntervalSet smid, tmid;
    for (std::ptrdiff_t i = i0 + 1; i < m0; ++i) {
      smid = smid.unite(s_terms[i]);
      tmid = tmid.unite(g_terms[i]);
    }
    parts.middle = Rat(smid.intersection_size(tmid), s_terms[i0].size());
  }

  // rest: the m0-th term and beyond in full, plus the cross pairings of the
  // earlier terms against non-matching blocks
  for (std::size_t j = 0; j < d; ++j) {
    SqrtSum term;
    bool matched = static_cast<std::ptrdiff_t>(j) < m0;
    for (std::size_t i = 0; i < k; ++i) {
      if (matched && i == j) continue;  // accounted in head/middle
      Int ov = g_terms[j].intersection_size(s_terms[i]);
      if (ov == 0) continue;
      Rat sign = (i % 2 == 0) ? Rat(1) : Rat(-1);
      term.add(sign * Rat(ov), g_terms[j].size() * s_terms[i].size());
    }
    if (matched && term.is_rational() && term.rational == 0) continue;
    parts.rest += term.enclosure(prec).abs();
  }
  return parts;
}

}  // namespace

UnconditionalityWitness unconditionality_witness(const MrInstance& inst,
                                                 std::size_t k, const Rat& tol) {
  if (k < 1) throw std::invalid_argument("unconditionality_witness: k >= 1");
  std::vector<IntervalSet> terms;
  if (inst.kind() == MrInstance::Kind::SegmentChain) {
    if (k + 1 > inst.chain().size())
      throw std::invalid_argument(
          "unconditionality_witness: no special sequence of length k fits");
    for (std::size_t i = 0; i < k; ++i)
      terms.push_back(IntervalSet::interval(inst.chain()[i], inst.chain()[i + 1]));
  } else {
    std::uint32_t g = inst.ground().convert_to<std::uint32_t>();
    auto seqs = enumerate_special(inst, FinSet::segment(g), k);
    if (seqs.empty())
      throw std::invalid_argument(
          "unconditionality_witness: no special sequence of length k fits");
    terms = seqs.front().terms;
  }

  MrVector x, y;
  for (std::size_t i = 0; i < k; ++i) {
    Rat sign = (i % 2 == 0) ? Rat(1) : Rat(-1);
    x = x.concat(MrVector::block(terms[i], sign, terms[i].size()));
    if (i % 2 == 0)
      y = y.concat(MrVector::block(terms[i], Rat(1), terms[i].size()));
  }

  UnconditionalityWitness w;
  w.x = x;
  w.y = y;
  w.report.k = k;
  w.report.norm_x = mr_norm(x, inst, tol);
  w.report.norm_y = mr_norm(y, inst, tol);
  w.report.suppression_lower = Rat(Int(k), 2) / w.report.norm_x.hi;

  // competing functional: the shared prefix plus a genuinely free final term
  // (the greedy maximizer of the last-slot contribution against x)
  std::vector<IntervalSet> g_terms(terms.begin(), terms.begin() + (k - 1));
  {
    Engine eng(inst, tol, std::nullopt, 256);
    Int from = k >= 2 ? terms[k - 2].max() + 1 : Int(0);
    auto free = eng.best_free(x, terms[k - 1].size(), from);
    g_terms.push_back(free ? free->second : terms[k - 1]);
  }
  w.report.parts = decompose(terms, g_terms, 256);
  w.report.parts_bounded = w.report.parts.head <= 1 && w.report.parts.middle <= 1 &&
                           w.report.parts.rest.hi <= 2;
  return w;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

json int_to_json(const Int& v) {
  if (v >= Int(std::numeric_limits<std::int64_t>::min()) &&
      v <= Int(std::numeric_limits<std::int64_t>::max()) &&
      v.convert_to<std::int64_t>() == v)
    return v.convert_to<std::int64_t>();
  return v.str();
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("instance json: expected integer or string");
}

}  // namespace

std::string MrInstance::to_json() const {
  json j;
  j["ground"] = int_to_json(ground_);
  j["n"] = n_;
  json w = json::array();
  for (const Int& m : weights_) w.push_back(int_to_json(m));
  j["weights"] = w;
  if (kind_ == Kind::BnStack) {
    j["coloring"] = "bn-stack";
    json st;
    st["ground_size"] = fi_->stack().ground_size;
    json tables = json::array();
    for (const auto& t : fi_->stack().tables) {
      json tt;
      tt["N"] = t.domain_size();
      json vals = json::array();
      for (std::uint32_t b = 1; b < t.domain_size(); ++b)
        for (std::uint32_t a = 0; a < b; ++a)
          vals.push_back(json::array({a, b, t.get(a, b)}));
      tt["values"] = vals;
      tables.push_back(tt);
    }
    st["tables"] = tables;
    j["stack"] = st;
    j["palette"] = weights_.size();
  } else {
    j["coloring"] = "explicit table";
    json table = json::array();
    for (std::size_t i = 0; i + 1 < chain_.size() && i < weights_.size(); ++i) {
      json entry;
      entry["union"] = json::array(
          {json::array({int_to_json(Int(0)), int_to_json(chain_[i])})});
      entry["weight_index"] = i;
      table.push_back(entry);
    }
    j["table"] = table;
  }
  return j.dump(2);
}

MrInstance MrInstance::from_json(const std::string& text) {
  json j = json::parse(text);
  std::string coloring = j.at("coloring").get<std::string>();
  MrInstance inst;
  inst.n_ = j.at("n").get<std::uint32_t>();
  inst.ground_ = int_from_json(j.at("ground"));
  for (const auto& w : j.at("weights")) inst.weights_.push_back(int_from_json(w));
  for (std::size_t i = 1; i < inst.weights_.size(); ++i)
    if (inst.weights_[i - 1] >= inst.weights_[i])
      throw std::invalid_argument("instance json: weights must increase");
  inst.slack_lo_ = lacunary_slack(inst.weights_);
  if (inst.slack_lo_ < 0)
    throw std::invalid_argument("instance json: weights fail the lacunary check");
  if (coloring == "bn-stack") {
    inst.kind_ = Kind::BnStack;
    const json& st = j.at("stack");
    RhoStack stack;
    stack.ground_size = st.at("ground_size").get<std::uint32_t>();
    for (const auto& tt : st.at("tables")) {
      std::uint32_t N = tt.at("N").get<std::uint32_t>();
      std::uint32_t maxc = 0;
      for (const auto& v : tt.at("values"))
        maxc = std::max(maxc, v.at(2).get<std::uint32_t>() + 1);
      RhoTable t(N, std::max<std::uint32_t>(maxc, 1));
      for (const auto& v : tt.at("values"))
        t.set(v.at(0).get<std::uint32_t>(), v.at(1).get<std::uint32_t>(),
              v.at(2).get<std::uint32_t>());
      stack.tables.push_back(std::move(t));
    }
    stack.depth = static_cast<std::uint32_t>(stack.tables.size());
    if (stack.depth != inst.n_)
      throw std::invalid_argument("instance json: stack depth differs from n");
    inst.fi_ = std::make_shared<FiTable>(std::move(stack));
    inst.build_bn_tokens();
  } else if (coloring == "explicit table") {
    inst.kind_ = Kind::SegmentChain;
    // validate the table is a prefix chain keyed by weight index
    std::vector<Int> ends(inst.weights_.size(), Int(-1));
    for (const auto& entry : j.at("table")) {
      std::size_t idx = entry.at("weight_index").get<std::size_t>();
      const json& uni = entry.at("union");
      if (idx >= ends.size())
        throw std::invalid_argument("instance json: weight index out of range");
      if (uni.size() == 0) {
        ends[idx] = 0;
        continue;
      }
      if (uni.size() != 1 || int_from_json(uni.at(0).at(0)) != 0)
        throw std::invalid_argument(
            "instance json: only prefix-chain tables are supported");
      ends[idx] = int_from_json(uni.at(0).at(1));
    }
    inst.chain_.push_back(0);
    for (std::size_t i = 0; i < ends.size(); ++i) {
      if (ends[i] != inst.chain_.back())
        throw std::invalid_argument("instance json: table is not the chain of "
                                    "partial-sum prefixes");
      inst.chain_.push_back(inst.chain_.back() + inst.weights_[i]);
    }
    if (inst.chain_.back() > inst.ground_)
      throw std::invalid_argument("instance json: chain exceeds the ground");
  } else {
    throw std::invalid_argument("instance json: unknown coloring kind");
  }
  return inst;
}

}  // namespace setnorm
