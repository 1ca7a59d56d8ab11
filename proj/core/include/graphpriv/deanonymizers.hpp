#pragma once

#include <cstdint>
#include <string>

#include <graphpriv/estimate.hpp>
#include <graphpriv/graph.hpp>

namespace graphpriv {

enum class DeanonKind { ns, kl, yg, dv, jlsb, ada };

std::string deanonymizer_name(DeanonKind kind);
DeanonKind deanonymizer_from_name(const std::string& name);

struct DeanonConfig {
  DeanonKind kind = DeanonKind::ns;
  double theta = 0.5;
  std::size_t chunk_size = 100;  // used by KL, DV, JLSB, ADA
  double jlsb_w_degree = 0.3;
  double jlsb_w_neighbor = 0.3;
  double jlsb_w_refdist = 0.4;
  double ada_w_distance = 0.6;
  double ada_w_structural = 0.2;
  double ada_w_inheritance = 0.2;
  double ada_epsilon = 0.5;
  std::size_t betweenness_samples = 64;
  std::uint64_t seed = 0;

  /// Per-algorithm defaults matching the usual experiment settings
  /// (NS theta 0.5; KL theta 1; YG theta 2; DV/JLSB/ADA theta 0, chunk 100).
  static DeanonConfig defaults_for(DeanonKind kind);

  void validate() const;
};

/// Everything the adversary knows: the auxiliary graph, the anonymized graph,
/// correct seed mappings (aux -> anon), and the full ground-truth
/// correspondence carried along for metric computation only.
struct AuxiliaryKnowledge {
  Graph aux;
  Graph anon;
  NodeMapping seeds;  // subset of truth
  NodeMapping truth;  // aux -> anon, hidden from the attack logic

  void validate() const;
};

/// Builds adversary knowledge from an original graph and its anonymization:
/// samples the auxiliary graph, composes the ground truth, and draws
/// seed_count seeds uniformly from nodes with degree >= 1 on both sides.
AuxiliaryKnowledge make_knowledge(const Graph& original, const Graph& anon,
                                  const NodeMapping& anon_mapping, double aux_ratio,
                                  std::size_t seed_count, std::uint64_t seed);

/// Dispatches to the attack selected by cfg.kind.
AdversaryEstimate deanonymize(const AuxiliaryKnowledge& k, const DeanonConfig& cfg);

// The six attacks. Local algorithms (NS, KL, YG) propagate from seeds and
// only attempt reachable nodes; global ones (DV, JLSB, ADA) score every node
// within degree-ordered chunks.
AdversaryEstimate deanon_ns(const AuxiliaryKnowledge& k, const DeanonConfig& cfg);
AdversaryEstimate deanon_kl(const AuxiliaryKnowledge& k, const DeanonConfig& cfg);
AdversaryEstimate deanon_yg(const AuxiliaryKnowledge& k, const DeanonConfig& cfg);
AdversaryEstimate deanon_dv(const AuxiliaryKnowledge& k, const DeanonConfig& cfg);
AdversaryEstimate deanon_jlsb(const AuxiliaryKnowledge& k, const DeanonConfig& cfg);
AdversaryEstimate deanon_ada(const AuxiliaryKnowledge& k, const DeanonConfig& cfg);

}  // namespace graphpriv
