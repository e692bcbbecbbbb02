#include "conlog/frame.hpp"

#include <set>

#include "conlog/error.hpp"

namespace conlog {

namespace {

std::set<std::pair<std::size_t, std::size_t>> as_pairs(const Relation& r) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (const auto& t : r.tuples) out.emplace(t[0], t[1]);
  return out;
}

}  // namespace

SortedFrame::SortedFrame(Signature signature, std::vector<std::vector<std::string>> carriers,
                         std::map<std::string, Relation> relations, bool bidirectional)
    : signature_(std::move(signature)),
      carriers_(std::move(carriers)),
      relations_(std::move(relations)),
      bidirectional_(bidirectional) {
  if (carriers_.size() != signature_.sort_count()) {
    throw FrameError("frame has " + std::to_string(carriers_.size()) + " carriers for " +
                     std::to_string(signature_.sort_count()) + " sorts");
  }
  for (std::size_t s = 0; s < carriers_.size(); ++s) {
    if (carriers_[s].empty()) throw FrameError("carrier of sort " + signature_.sort_names()[s] + " is empty");
    std::set<std::string> seen;
    for (const auto& w : carriers_[s]) {
      if (!seen.insert(w).second) throw FrameError("duplicate world '" + w + "'");
    }
  }
  for (const auto& [name, rel] : relations_) {
    if (!signature_.find(name)) throw FrameError("relation for undeclared modality '" + name + "'");
  }
  for (const auto& m : signature_.modalities()) {
    Relation& rel = relations_[m->name];
    for (const auto& t : rel.tuples) {
      if (t.size() != m->arity() + 1) {
        throw FrameError("tuple of R_" + m->name + " has length " + std::to_string(t.size()));
      }
      if (t[0] >= carrier_size(m->result)) throw FrameError("tuple of R_" + m->name + " out of range");
      for (std::size_t i = 0; i < m->arity(); ++i) {
        if (t[i + 1] >= carrier_size(m->arguments[i])) {
          throw FrameError("tuple of R_" + m->name + " out of range");
        }
      }
    }
    if (m->arity() == 1) {
      std::vector<BitSet> succ(carrier_size(m->result), BitSet(carrier_size(m->arguments[0])));
      for (const auto& t : rel.tuples) succ[t[0]].set(t[1]);
      successors_.emplace(m->name, std::move(succ));
    }
  }
  if (bidirectional_) {
    for (const auto& m : signature_.modalities()) {
      if (m->converse.empty()) continue;
      auto forward = as_pairs(relations_.at(m->name));
      std::set<std::pair<std::size_t, std::size_t>> backward;
      for (const auto& [a, b] : as_pairs(relations_.at(m->converse))) backward.emplace(b, a);
      if (forward != backward) {
        throw FrameError("R_" + m->converse + " is not the converse of R_" + m->name);
      }
    }
  }
}

const Relation& SortedFrame::relation(const std::string& modality) const {
  auto it = relations_.find(modality);
  if (it == relations_.end()) throw SignatureError("frame has no relation for '" + modality + "'");
  return it->second;
}

const std::vector<BitSet>& SortedFrame::successors(const std::string& modality) const {
  auto it = successors_.find(modality);
  if (it == successors_.end()) {
    throw SignatureError("'" + modality + "' is not a unary modality of the frame");
  }
  return it->second;
}

SortedFrame context_to_frame(const FormalContext& context) {
  Relation inverse;  // I^-1: (m, g)
  Relation forward;  // I: (g, m)
  for (std::size_t g = 0; g < context.object_count(); ++g) {
    context.row(g).for_each([&](std::size_t m) {
      inverse.tuples.push_back({m, g});
      forward.tuples.push_back({g, m});
    });
  }
  std::map<std::string, Relation> rel;
  rel[std::string(names::kDia)] = inverse;
  rel[std::string(names::kWin)] = inverse;
  rel[std::string(names::kDiaInv)] = forward;
  rel[std::string(names::kWinInv)] = std::move(forward);
  return SortedFrame(Signature::two_sorted(), {context.objects(), context.attributes()},
                     std::move(rel), true);
}

FormalContext frame_to_context(const SortedFrame& frame) {
  const Signature& sig = frame.signature();
  if (!frame.bidirectional() || sig.sort_count() != 2) {
    throw FrameError("only bidirectional two-sorted frames correspond to contexts");
  }
  auto m = sig.find(names::kDia);
  if (!m) m = sig.find(names::kWin);
  if (!m || m->arguments[0] != kObjects || m->result != kAttributes) {
    throw FrameError("frame has neither dia nor boxm from s1 to s2");
  }
  const std::size_t g_count = frame.carrier_size(kObjects);
  const std::size_t m_count = frame.carrier_size(kAttributes);
  std::vector<BitSet> rows(g_count, BitSet(m_count));
  for (const auto& t : frame.relation(m->name).tuples) rows[t[1]].set(t[0]);
  return FormalContext(frame.carrier(kObjects), frame.carrier(kAttributes), rows);
}

SortedFrame complement_frame(const SortedFrame& frame) {
  const Signature& sig = frame.signature();
  std::map<std::string, Relation> rel;
  for (const auto& m : sig.modalities()) {
    std::set<std::vector<std::size_t>> present(frame.relation(m->name).tuples.begin(),
                                               frame.relation(m->name).tuples.end());
    std::vector<std::size_t> dims{frame.carrier_size(m->result)};
    for (Sort s : m->arguments) dims.push_back(frame.carrier_size(s));
    Relation out;
    std::vector<std::size_t> t(dims.size(), 0);
    bool more = true;
    while (more) {
      if (!present.count(t)) out.tuples.push_back(t);
      more = false;
      for (std::size_t i = dims.size(); i-- > 0;) {
        if (++t[i] < dims[i]) {
          more = true;
          break;
        }
        t[i] = 0;
      }
    }
    rel.emplace(m->name, std::move(out));
  }
  std::vector<std::vector<std::string>> carriers;
  for (std::size_t s = 0; s < sig.sort_count(); ++s) {
    carriers.push_back(frame.carrier(Sort{static_cast<std::uint8_t>(s)}));
  }
  return SortedFrame(sig, std::move(carriers), std::move(rel), frame.bidirectional());
}

}  // namespace conlog
