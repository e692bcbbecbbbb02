#include "conlog/semantics.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "conlog/error.hpp"

namespace conlog {

Model::Model(SortedFrame frame, Valuation valuation)
    : frame_(std::move(frame)), valuation_(std::move(valuation)) {
  for (const auto& [key, subset] : valuation_) {
    if (subset.sort != key.sort) {
      throw ValuationError("value of '" + key.name + "' has the wrong sort");
    }
    if (key.sort.index >= frame_.signature().sort_count() ||
        subset.bits.size() != frame_.carrier_size(key.sort)) {
      throw ValuationError("value of '" + key.name + "' is sized for another carrier");
    }
  }
}

namespace {

void require_interpreted(const SortedFrame& frame, const Formula& f) {
  if (!frame.signature().contains(*f.modality())) {
    throw SignatureError("modality '" + f.modality()->name + "' is not interpreted by the frame");
  }
}

BitSet eval_sets(const Model& model, const Formula& f) {
  const SortedFrame& frame = model.frame();
  const std::size_t n = frame.carrier_size(f.sort());
  switch (f.op()) {
    case Connective::var: {
      auto it = model.valuation().find({f.name(), f.sort()});
      if (it == model.valuation().end()) {
        throw ValuationError("variable '" + f.name() + "' of sort " +
                             frame.signature().sort_name(f.sort()) + " has no value");
      }
      return it->second.bits;
    }
    case Connective::bot: return BitSet(n);
    case Connective::top: return BitSet::full(n);
    case Connective::neg: return ~eval_sets(model, f.child(0));
    case Connective::conj: return eval_sets(model, f.child(0)) & eval_sets(model, f.child(1));
    case Connective::disj: return eval_sets(model, f.child(0)) | eval_sets(model, f.child(1));
    case Connective::imp: return ~eval_sets(model, f.child(0)) | eval_sets(model, f.child(1));
    case Connective::iff:
      return ~(eval_sets(model, f.child(0)) ^ eval_sets(model, f.child(1)));
    case Connective::modal:
    case Connective::dual:
      break;
  }
  require_interpreted(frame, f);
  const Modality& m = *f.modality();
  std::vector<BitSet> args;
  for (const auto& c : f.children()) args.push_back(eval_sets(model, c));
  BitSet out(n);
  if (m.arity() == 1) {
    const auto& succ = frame.successors(m.name);
    for (std::size_t w = 0; w < n; ++w) {
      bool v;
      if (m.kind == ModalityKind::window) {
        v = args[0].is_subset_of(succ[w]);
      } else if (f.op() == Connective::modal) {
        v = succ[w].intersects(args[0]);
      } else {
        v = succ[w].is_subset_of(args[0]);
      }
      out.set(w, v);
    }
    return out;
  }
  if (f.op() == Connective::dual) out = BitSet::full(n);
  for (const auto& t : frame.relation(m.name).tuples) {
    bool all = true;
    bool any = false;
    for (std::size_t i = 0; i < args.size(); ++i) {
      const bool in = args[i].test(t[i + 1]);
      all = all && in;
      any = any || in;
    }
    if (f.op() == Connective::modal && all) out.set(t[0]);
    if (f.op() == Connective::dual && !any) out.reset(t[0]);
  }
  return out;
}

}  // namespace

SortedSubset truth_set(const Model& model, const Formula& f) {
  if (f.sort().index >= model.frame().signature().sort_count()) {
    throw SortError("formula sort is not a sort of the frame");
  }
  return {f.sort(), eval_sets(model, f)};
}

bool satisfies(const Model& model, Sort sort, std::size_t world, const Formula& f) {
  if (sort != f.sort()) {
    throw SortError("world of sort " + default_sort_name(sort) + " cannot satisfy a formula of sort " +
                    default_sort_name(f.sort()));
  }
  if (world >= model.frame().carrier_size(sort)) throw DimensionError("world index out of range");
  return truth_set(model, f).bits.test(world);
}

std::size_t valuation_exponent(const SortedFrame& frame, const std::vector<Formula>& formulas) {
  std::size_t e = 0;
  for (const auto& v : variables(formulas)) e += frame.carrier_size(v.sort);
  return e;
}

namespace {

using Word = std::uint64_t;

constexpr Word kLowPatterns[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

constexpr std::size_t kMaxChunkLog = 10;  // 1024 words per chunk

/// Truth of every subformula at every world, for a block of consecutive
/// valuations packed one per bit. Variable k owns the valuation-index bits
/// base_k .. base_k + |W_sort(k)| - 1, world j of k being bit base_k + j.
class SlicedChecker {
 public:
  SlicedChecker(const SortedFrame& frame, const std::vector<Formula>& global_premises,
                const std::vector<Formula>& local_premises, const Formula& conclusion,
                std::uint64_t budget)
      : frame_(frame) {
    std::vector<Formula> all = global_premises;
    all.insert(all.end(), local_premises.begin(), local_premises.end());
    all.push_back(conclusion);
    vars_ = variables(all);
    std::size_t base = 0;
    for (const auto& v : vars_) {
      bases_.push_back(base);
      base += frame.carrier_size(v.sort);
    }
    exponent_ = base;
    if (exponent_ >= 63 || (std::uint64_t{1} << exponent_) > budget) {
      throw BudgetExceeded(exponent_, budget);
    }
    for (const auto& f : global_premises) global_.push_back(intern(f));
    for (const auto& f : local_premises) local_.push_back(intern(f));
    conclusion_ = intern(conclusion);
    conclusion_sort_ = conclusion.sort();

    const std::size_t word_log = exponent_ > 6 ? exponent_ - 6 : 0;
    chunk_log_ = std::min(word_log, kMaxChunkLog);
    chunk_words_ = std::size_t{1} << chunk_log_;
    chunks_ = std::size_t{1} << (word_log - chunk_log_);
    last_mask_ = exponent_ >= 6 ? ~Word{0} : ((Word{1} << (std::size_t{1} << exponent_)) - 1);
  }

  std::size_t exponent() const { return exponent_; }

  CheckResult run() {
    CheckResult result;
    result.exponent = exponent_;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    std::mutex lock;
    std::optional<std::pair<std::uint64_t, std::size_t>> failure;  // valuation index, world

    auto worker = [&] {
      std::vector<std::vector<Word>> buf(nodes_.size());
      while (true) {
        const std::size_t c = next.fetch_add(1);
        if (c >= chunks_ || c > best.load()) return;
        auto hit = run_chunk(c, buf);
        if (!hit) continue;
        std::lock_guard<std::mutex> g(lock);
        if (!failure || hit->first < failure->first) failure = hit;
        std::size_t cur = best.load();
        while (c < cur && !best.compare_exchange_weak(cur, c)) {
        }
      }
    };

    const std::size_t threads =
        std::min<std::size_t>(chunks_, std::max(1U, std::thread::hardware_concurrency()));
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    if (failure) {
      result.holds = false;
      result.counterexample = decode(failure->first, failure->second);
    }
    return result;
  }

 private:
  struct Node {
    Connective op;
    std::size_t worlds = 0;
    std::vector<std::size_t> kids;
    ModalityKind kind = ModalityKind::existential;
    const std::vector<BitSet>* succ = nullptr;
    const Relation* rel = nullptr;
    std::size_t var = 0;
  };

  std::size_t intern(const Formula& f) {
    auto it = index_.find(f);
    if (it != index_.end()) return it->second;
    Node n;
    n.op = f.op();
    n.worlds = frame_.carrier_size(f.sort());
    for (const auto& c : f.children()) n.kids.push_back(intern(c));
    if (f.is_modal()) {
      require_interpreted(frame_, f);
      n.kind = f.modality()->kind;
      if (f.modality()->arity() == 1) {
        n.succ = &frame_.successors(f.modality()->name);
      } else {
        n.rel = &frame_.relation(f.modality()->name);
      }
    }
    if (f.op() == Connective::var) {
      n.var = static_cast<std::size_t>(
          std::lower_bound(vars_.begin(), vars_.end(), VarKey{f.name(), f.sort()}) - vars_.begin());
    }
    nodes_.push_back(std::move(n));
    index_.emplace(f, nodes_.size() - 1);
    return nodes_.size() - 1;
  }

  Word pattern(std::size_t bit, std::size_t chunk, std::size_t word) const {
    if (bit < 6) return kLowPatterns[bit];
    if (bit < 6 + chunk_log_) return ((word >> (bit - 6)) & 1U) ? ~Word{0} : 0;
    return ((chunk >> (bit - 6 - chunk_log_)) & 1U) ? ~Word{0} : 0;
  }

  void eval(std::size_t id, std::size_t chunk, std::vector<std::vector<Word>>& buf) const {
    const Node& n = nodes_[id];
    const std::size_t W = chunk_words_;
    auto& out = buf[id];
    out.assign(n.worlds * W, 0);
    auto at = [&](std::size_t node, std::size_t w) { return buf[node].data() + w * W; };
    switch (n.op) {
      case Connective::var: {
        const std::size_t base = bases_[n.var];
        for (std::size_t w = 0; w < n.worlds; ++w) {
          for (std::size_t i = 0; i < W; ++i) out[w * W + i] = pattern(base + w, chunk, i);
        }
        return;
      }
      case Connective::bot: return;
      case Connective::top: std::fill(out.begin(), out.end(), ~Word{0}); return;
      case Connective::neg:
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = ~buf[n.kids[0]][k];
        return;
      case Connective::conj:
      case Connective::disj:
      case Connective::imp:
      case Connective::iff: {
        const auto& a = buf[n.kids[0]];
        const auto& b = buf[n.kids[1]];
        for (std::size_t k = 0; k < out.size(); ++k) {
          switch (n.op) {
            case Connective::conj: out[k] = a[k] & b[k]; break;
            case Connective::disj: out[k] = a[k] | b[k]; break;
            case Connective::imp: out[k] = ~a[k] | b[k]; break;
            default: out[k] = ~(a[k] ^ b[k]); break;
          }
        }
        return;
      }
      case Connective::modal:
      case Connective::dual:
        break;
    }
    if (n.succ) {
      const auto& succ = *n.succ;
      const std::size_t arg = n.kids[0];
      for (std::size_t w = 0; w < n.worlds; ++w) {
        Word* o = out.data() + w * W;
        if (n.kind == ModalityKind::window) {
          std::fill(o, o + W, ~Word{0});
          const std::size_t m = succ[w].size();
          for (std::size_t u = 0; u < m; ++u) {
            if (succ[w].test(u)) continue;
            const Word* a = at(arg, u);
            for (std::size_t i = 0; i < W; ++i) o[i] &= ~a[i];
          }
        } else if (n.op == Connective::modal) {
          succ[w].for_each([&](std::size_t u) {
            const Word* a = at(arg, u);
            for (std::size_t i = 0; i < W; ++i) o[i] |= a[i];
          });
        } else {
          std::fill(o, o + W, ~Word{0});
          succ[w].for_each([&](std::size_t u) {
            const Word* a = at(arg, u);
            for (std::size_t i = 0; i < W; ++i) o[i] &= a[i];
          });
        }
      }
      return;
    }
    if (n.op == Connective::dual) std::fill(out.begin(), out.end(), ~Word{0});
    std::vector<Word> acc(W);
    for (const auto& t : n.rel->tuples) {
      std::fill(acc.begin(), acc.end(), n.op == Connective::modal ? ~Word{0} : Word{0});
      for (std::size_t j = 0; j < n.kids.size(); ++j) {
        const Word* a = at(n.kids[j], t[j + 1]);
        for (std::size_t i = 0; i < W; ++i) {
          if (n.op == Connective::modal) {
            acc[i] &= a[i];
          } else {
            acc[i] |= a[i];
          }
        }
      }
      Word* o = out.data() + t[0] * W;
      for (std::size_t i = 0; i < W; ++i) {
        if (n.op == Connective::modal) {
          o[i] |= acc[i];
        } else {
          o[i] &= acc[i];
        }
      }
    }
  }

  /// First failing (valuation index, world) in this chunk, if any.
  std::optional<std::pair<std::uint64_t, std::size_t>> run_chunk(
      std::size_t chunk, std::vector<std::vector<Word>>& buf) const {
    for (std::size_t id = 0; id < nodes_.size(); ++id) eval(id, chunk, buf);
    const std::size_t W = chunk_words_;
    std::vector<Word> global(W, chunks_ == 1 && chunk_words_ == 1 ? last_mask_ : ~Word{0});
    for (std::size_t id : global_) {
      for (std::size_t w = 0; w < nodes_[id].worlds; ++w) {
        for (std::size_t i = 0; i < W; ++i) global[i] &= buf[id][w * W + i];
      }
    }
    const std::size_t worlds = nodes_[conclusion_].worlds;
    for (std::size_t i = 0; i < W; ++i) {
      if (global[i] == 0) continue;
      Word lowest = 0;
      std::size_t lowest_world = 0;
      for (std::size_t w = 0; w < worlds; ++w) {
        Word bad = global[i] & ~buf[conclusion_][w * W + i];
        for (std::size_t id : local_) bad &= buf[id][w * W + i];
        if (bad == 0) continue;
        const Word low = bad & (~bad + 1);
        if (lowest == 0 || low < lowest) {
          lowest = low;
          lowest_world = w;
        }
      }
      if (lowest != 0) {
        const auto bit = static_cast<std::uint64_t>(std::countr_zero(lowest));
        const std::uint64_t index =
            (static_cast<std::uint64_t>(chunk) << (chunk_log_ + 6)) | (std::uint64_t{i} << 6) | bit;
        return std::make_pair(index, lowest_world);
      }
    }
    return std::nullopt;
  }

  Counterexample decode(std::uint64_t index, std::size_t world) const {
    Counterexample cx;
    cx.sort = conclusion_sort_;
    cx.world = world;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      const std::size_t n = frame_.carrier_size(vars_[k].sort);
      SortedSubset s{vars_[k].sort, BitSet(n)};
      for (std::size_t j = 0; j < n; ++j) s.bits.set(j, (index >> (bases_[k] + j)) & 1U);
      cx.valuation.emplace(vars_[k], std::move(s));
    }
    return cx;
  }

  const SortedFrame& frame_;
  std::vector<VarKey> vars_;
  std::vector<std::size_t> bases_;
  std::size_t exponent_ = 0;
  std::vector<Node> nodes_;
  std::unordered_map<Formula, std::size_t> index_;
  std::vector<std::size_t> global_;
  std::vector<std::size_t> local_;
  std::size_t conclusion_ = 0;
  Sort conclusion_sort_;
  std::size_t chunk_log_ = 0;
  std::size_t chunk_words_ = 1;
  std::size_t chunks_ = 1;
  Word last_mask_ = ~Word{0};
};

void require_frame_sort(const SortedFrame& frame, const Formula& f) {
  if (f.sort().index >= frame.signature().sort_count()) {
    throw SortError("formula sort is not a sort of the frame");
  }
}

}  // namespace

CheckResult check_frame_validity(const SortedFrame& frame, const Formula& f, std::uint64_t budget) {
  require_frame_sort(frame, f);
  return SlicedChecker(frame, {}, {}, f, budget).run();
}

CheckResult check_local_consequence(const SortedFrame& frame, const std::vector<Formula>& premises,
                                    const Formula& conclusion, std::uint64_t budget) {
  require_frame_sort(frame, conclusion);
  for (const auto& p : premises) {
    if (p.sort() != conclusion.sort()) {
      throw SortError("local consequence needs premises and conclusion of one sort; premise has " +
                      default_sort_name(p.sort()) + ", conclusion " +
                      default_sort_name(conclusion.sort()));
    }
  }
  return SlicedChecker(frame, {}, premises, conclusion, budget).run();
}

CheckResult check_global_consequence(const SortedFrame& frame,
                                     const std::vector<Formula>& premises,
                                     const Formula& conclusion, std::uint64_t budget) {
  require_frame_sort(frame, conclusion);
  for (const auto& p : premises) require_frame_sort(frame, p);
  return SlicedChecker(frame, premises, {}, conclusion, budget).run();
}

bool frame_valid(const SortedFrame& frame, const Formula& f, std::uint64_t budget) {
  return check_frame_validity(frame, f, budget).holds;
}

bool local_consequence(const SortedFrame& frame, const std::vector<Formula>& premises,
                       const Formula& conclusion, std::uint64_t budget) {
  return check_local_consequence(frame, premises, conclusion, budget).holds;
}

std::string format_valuation(const Valuation& valuation, const SortedFrame& frame) {
  std::string out;
  for (const auto& [key, subset] : valuation) {
    if (!out.empty()) out += ", ";
    out += key.name + ":" + frame.signature().sort_name(key.sort) + " = {";
    bool first = true;
    subset.bits.for_each([&](std::size_t i) {
      if (!first) out += ", ";
      first = false;
      out += frame.carrier(key.sort)[i];
    });
    out += "}";
  }
  return out;
}

}  // namespace conlog
