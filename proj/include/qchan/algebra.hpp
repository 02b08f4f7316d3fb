#pragma once

#include <cstdint>
#include <vector>

#include "qchan/channel.hpp"
#include "qchan/linalg.hpp"

namespace qchan {

/// A unital *-subalgebra of M_d, carried by an HS-orthonormal basis.
/// Abelianness and identity membership are established at construction;
/// closure under products/adjoints is a property of where the basis came
/// from and can be checked explicitly.
class StarAlgebra {
 public:
  /// Orthonormalizes the given spanning set. Closure is not imposed.
  static StarAlgebra from_span(int d, const std::vector<ComplexMatrix>& span,
                               Tolerance tol = {});

  int ambient_dim() const { return d_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<ComplexMatrix>& basis() const { return basis_; }
  bool contains_identity() const { return contains_identity_; }
  bool abelian() const { return abelian_; }

  /// Orthogonal projection of x onto the span.
  ComplexMatrix project(const ComplexMatrix& x) const;

  /// Span membership within tol (relative to ||x||).
  bool contains(const ComplexMatrix& x, Tolerance tol = {}) const;

  bool closed_under_adjoint(Tolerance tol = {}) const;
  bool closed_under_product(Tolerance tol = {}) const;

 private:
  StarAlgebra(int d, std::vector<ComplexMatrix> basis, bool has_identity,
              bool abelian)
      : d_(d),
        basis_(std::move(basis)),
        contains_identity_(has_identity),
        abelian_(abelian) {}

  int d_ = 0;
  std::vector<ComplexMatrix> basis_;
  bool contains_identity_ = false;
  bool abelian_ = false;
};

/// Equal dimension plus mutual span containment within tol.
bool same_algebra(const StarAlgebra& a, const StarAlgebra& b, Tolerance tol = {});

/// Multiplicative domain of a unital channel, computed as the nullspace of
/// the linear system { K_k x = E(x) K_k, x K_k* = K_k* E(x) } over all k.
/// These are the equality cases of the two Schwarz inequalities, so the
/// result coincides with the definitional quadratic characterization
/// (md_brute_check is the independent oracle for that claim).
/// Throws UnsupportedPreconditionError when E is not unital.
StarAlgebra multiplicative_domain(const Channel& e, Tolerance tol = {});

/// Definitional check: E(x*x) = E(x*)E(x) and E(xx*) = E(x)E(x*).
bool md_brute_check(const Channel& e, const ComplexMatrix& x, Tolerance tol = {});

/// Fixed points {a : E(a) = a} of a unital TP channel, as the nullspace of
/// (superop - I). Closure under products is verified, not imposed.
StarAlgebra fixed_point_algebra(const Channel& e, Tolerance tol = {});

struct MdChain {
  std::vector<StarAlgebra> algebras;  // M_{E^1}, ..., M_{E^kappa}
  int kappa = 0;
  StarAlgebra stabilized;
};

/// Decreasing chain of multiplicative domains of channel powers until two
/// consecutive terms agree. cap = 0 means d^2 (the dimension of the chain
/// strictly decreases before stabilizing, so d^2 always suffices).
MdChain md_chain(const Channel& e, int cap = 0, Tolerance tol = {});

bool is_abelian(const StarAlgebra& a, Tolerance tol = {});

/// Minimal projections of an abelian algebra containing the identity:
/// spectral projections of a generic self-adjoint element, with a seeded
/// retry when the generic element has clustered eigenvalues.
std::vector<ComplexMatrix> minimal_projections(const StarAlgebra& a,
                                               Tolerance tol = {},
                                               std::uint64_t seed = 0);

/// Smallest *-algebra containing {I} and the generators: closure of the
/// span under adjoints and pairwise products until the dimension stops
/// growing.
StarAlgebra generated_algebra(int d, const std::vector<ComplexMatrix>& gens,
                              Tolerance tol = {});

}  // namespace qchan
