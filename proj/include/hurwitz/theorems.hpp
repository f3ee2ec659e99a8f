#pragma once

// Realization conditions for disks (D1-D3) and annuli (C1-C4), leaf-count
// formulas, annulus structure and the small-conductor classification.

#include <optional>
#include <string>
#include <vector>

#include "hurwitz/hurwitz_tree.hpp"
#include "hurwitz/realizability.hpp"

namespace hurwitz::thm {

enum class Verdict { RealizableProved, ConditionsFailed, ConditionsHoldRealizabilityUnknown };
std::string to_string(Verdict v);

struct VertexStatus {
  std::string vertex;
  real::CertStatus status = real::CertStatus::Unknown;
  std::optional<real::VertexCertification> detail;
  std::string error;  // set when the vertex shape is outside the criteria
};

struct CertifyOptions {
  unsigned n_max = 3;
  std::uint64_t budget = 10'000'000;
};

struct DiskReport {
  bool d1 = false;
  bool d2 = false;
  std::vector<std::string> d2_offending;  // edge ids
  std::vector<VertexStatus> d3;
  Verdict verdict = Verdict::ConditionsFailed;
  std::vector<std::string> failed;  // "D1", "D2"
};

/// Throws InvalidTree unless the tree validates.
DiskReport check_disk(const tree::HurwitzTree& t, const CertifyOptions& opt = {});

/// m(a) + 1 equals the number of leaves of Gamma[a].
bool disk_leaf_formula(const tree::HurwitzTree& t, const std::string& edge_id);

/// The chain from the root to the unique maximal vertex whose incoming edge
/// has eps != 0, if there is exactly one such vertex.
std::optional<std::vector<std::string>> fundamental_chain(const tree::HurwitzTree& t);

struct AnnulusReport {
  bool c1 = false;
  bool c2 = false;
  bool c3 = false;
  std::vector<std::string> c3_offending;  // maximal vertices
  std::vector<VertexStatus> c4;
  std::vector<std::string> chain;
  std::optional<long> thickness;
  Verdict verdict = Verdict::ConditionsFailed;
  std::vector<std::string> failed;  // "C1", "C2", "C3"
};

AnnulusReport check_annulus(const tree::HurwitzTree& t, const CertifyOptions& opt = {});

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct StructureReport {
  std::vector<Check> checks;
  bool ok() const;
};

/// Requires C1 and C2 (PreconditionFailed otherwise).
StructureReport annulus_structure_checks(const tree::HurwitzTree& t);

enum class ConductorKind { I, II, III };
std::string to_string(ConductorKind k);

struct ConductorType {
  ConductorKind type;
  long m1;
  long m2;
  long thickness;
  std::vector<Check> checks;
  bool consistent() const;
};

/// Classifies by thickness against (1/m1 + 1/m2) N and verifies the shape
/// assertions of the type. PreconditionFailed unless C1-C3 hold, both
/// boundary vertices are etale and 0 < m1, m2 < p. The H axioms are not
/// re-checked, so a failed assertion flags an inconsistent input.
ConductorType small_conductor_type(const tree::HurwitzTree& t);

}  // namespace hurwitz::thm
