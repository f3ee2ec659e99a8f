#pragma once

// Adapted partitions, the small-partition criterion, rational point search on
// X*_e and vertex certificates.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/char_p_diff.hpp"
#include "hurwitz/hurwitz_tree.hpp"

namespace hurwitz::real {

/// Nonzero residues e_i in F_p (stored in [1, p)) summing to 0.
class ResidueVector {
 public:
  /// Reduces entries mod p; throws InvalidArgument on a zero entry or a
  /// nonzero sum.
  ResidueVector(int p, std::vector<long> entries);
  int p() const { return p_; }
  size_t size() const { return e_.size(); }
  long operator[](size_t i) const { return e_[i]; }
  const std::vector<long>& entries() const { return e_; }
  std::string to_string() const;

 private:
  int p_;
  std::vector<long> e_;
};

/// Blocks of indices into a ResidueVector.
struct Partition {
  std::vector<std::vector<size_t>> blocks;
  std::string to_string(const ResidueVector& e) const;
};

/// True iff some nonempty proper sub-multiset of the values sums to 0 mod p.
bool has_proper_zero_sum(const std::vector<long>& values, int p);

/// Throws IndexMismatch unless P partitions {0, ..., |e|-1}.
bool is_adapted(const Partition& P, const ResidueVector& e);
/// Throws NotAdapted if P is not adapted.
bool is_maximal_adapted(const Partition& P, const ResidueVector& e);

struct CriterionOptions {
  size_t max_size = 40;
};

/// A maximal adapted partition with the fewest blocks, if that number is at
/// most bound. Throws BudgetExceeded when |e| > max_size.
std::optional<Partition> small_maximal_partition(const ResidueVector& e, long bound, const CriterionOptions& opt = {});
bool criterion_small_partition(const ResidueVector& e, long bound, const CriterionOptions& opt = {});
/// floor(m/p) + 1 and floor(m1/p) + floor(m2/p) + 1.
long disk_bound(long m, int p);
long annulus_bound(long m1, long m2, int p);

enum class Shape { DiskMult, DiskAdd, AnnMult, AnnAdd };
std::string to_string(Shape s);
inline bool is_annulus(Shape s) { return s == Shape::AnnMult || s == Shape::AnnAdd; }
inline bool is_mult(Shape s) { return s == Shape::DiskMult || s == Shape::AnnMult; }

struct VertexProblem {
  ResidueVector e;
  long bound;
  Shape shape;
  long m1;  // -m of the first negative arc
  long m2;  // -m of the second negative arc, 0 for disks
  std::vector<tree::EdgeRef> negative;
  /// Arcs carrying the first entries of e; the remaining entries are padding.
  std::vector<tree::EdgeRef> indexed;
  size_t padding;
};

/// Throws PreconditionFailed (valence < 3), UnsupportedShape or InvalidTree.
VertexProblem vertex_residue_vector(const tree::HurwitzTree& t, const std::string& s);

/// Exponents nu of the power sums sum e_i t_i^nu that must vanish: 1..m-1
/// for a disk, and also -1..-(m2-1) for an annulus; multiples of p omitted.
std::vector<long> constraint_exponents(long m1, long m2, int p);

struct SearchOptions {
  unsigned n_max = 3;
  std::uint64_t budget = 10'000'000;
  bool annulus = false;
  long m1 = 0;  // disk: defaults to |e| - 1
  long m2 = 0;
};

struct SearchResult {
  std::optional<std::vector<charp::FqElt>> point;
  charp::FieldPtr field;  // field of the point, or the last one searched
  std::uint64_t tuples = 0;
  bool budget_exhausted = false;
};

/// Searches X*_e(F_{p^n}) for n = 1..n_max. Coordinates are pairwise
/// distinct, and nonzero for the annulus problem. None is not a proof of
/// emptiness.
SearchResult search_point(const ResidueVector& e, const SearchOptions& opt);

/// True iff the point satisfies every power-sum equation and distinctness.
bool check_point(const ResidueVector& e, const std::vector<charp::FqElt>& point, const charp::FiniteField& F,
                 const std::vector<long>& exponents, bool nonzero);

struct Certificate {
  charp::FieldPtr field;
  std::vector<charp::FqElt> point;
  charp::RatFunc u;
  std::vector<charp::CertificateEdge> edges;
  charp::ReductionKind kind;
};

enum class CertStatus { ProvedByCriterion, Certified, Unknown, NotApplicable };
std::string to_string(CertStatus s);

struct VertexCertification {
  CertStatus status = CertStatus::NotApplicable;
  std::optional<VertexProblem> problem;
  std::optional<Partition> partition;  // witness for the criterion
  std::optional<Certificate> certificate;
  std::uint64_t tuples = 0;
  bool budget_exhausted = false;
};

/// Name of an arc in certificates: the edge id, prefixed by '~' if reversed.
std::string arc_name(const tree::HurwitzTree& t, const tree::EdgeRef& r);

/// Builds u and the point assignment for a point of X*_e.
Certificate build_certificate(const tree::HurwitzTree& t, const VertexProblem& prob, const charp::FieldPtr& F,
                              const std::vector<charp::FqElt>& point);

VertexCertification certify_vertex(const tree::HurwitzTree& t, const std::string& s, unsigned n_max = 3,
                                   std::uint64_t budget = 10'000'000);

}  // namespace hurwitz::real
