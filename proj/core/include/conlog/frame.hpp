#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "conlog/bitset.hpp"
#include "conlog/context.hpp"
#include "conlog/signature.hpp"

namespace conlog {

/// R_sigma for sigma : s_1 ... s_n -> s, as tuples (w, u_1, ..., u_n) with
/// w in W_s and u_i in W_{s_i}.
struct Relation {
  std::vector<std::vector<std::size_t>> tuples;
};

/// Finite many-sorted relational frame over a signature. Carriers are tagged
/// by sort, so they are disjoint by construction.
class SortedFrame {
 public:
  /// Throws FrameError on an empty carrier, duplicate world names, a tuple of
  /// the wrong length or out of range, a relation for an undeclared modality,
  /// or, when `bidirectional` is set, a converse pair whose relations are not
  /// mutually converse. Modalities without an entry get the empty relation.
  SortedFrame(Signature signature, std::vector<std::vector<std::string>> carriers,
              std::map<std::string, Relation> relations, bool bidirectional);

  const Signature& signature() const { return signature_; }
  bool bidirectional() const { return bidirectional_; }

  std::size_t carrier_size(Sort s) const { return carriers_.at(s.index).size(); }
  const std::vector<std::string>& carrier(Sort s) const { return carriers_.at(s.index); }

  const Relation& relation(const std::string& modality) const;

  /// For a unary modality: successors(m)[w] = {u : (w, u) in R_m}.
  const std::vector<BitSet>& successors(const std::string& modality) const;

 private:
  Signature signature_;
  std::vector<std::vector<std::string>> carriers_;
  std::map<std::string, Relation> relations_;
  std::map<std::string, std::vector<BitSet>> successors_;
  bool bidirectional_;
};

/// (G, M, I) |-> (G, M, I^-1, I): dia and boxm get I^-1 (attribute to
/// object), dia- and boxm- get I. The frame is over the two-sorted signature
/// and flagged bidirectional.
SortedFrame context_to_frame(const FormalContext& context);

/// Inverse of context_to_frame, read off the dia relation (boxm when the
/// signature has no dia). Throws FrameError on frames that are not
/// bidirectional two-sorted frames.
FormalContext frame_to_context(const SortedFrame& frame);

/// Same carriers, every relation complemented within its product set.
SortedFrame complement_frame(const SortedFrame& frame);

}  // namespace conlog
