#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thetanf/matrix.hpp"
#include "thetanf/poly.hpp"

namespace thetanf {

/// Degrees supported by the trace-zero construction.
inline constexpr long kMinDegree = 2;
inline constexpr long kMaxDegree = 7;

/// Input description of a number field K = Q[x]/(poly).
struct FieldRecord {
    Polynomial poly;                          // monic, degree in [2, 7]
    std::optional<RatMatrix> basis;           // rows = integral basis in power coords
    std::optional<std::string> label;
    std::optional<std::string> galois_group;  // metadata tag, e.g. "S4"
    std::optional<Int> claimed_disc;

    std::string display_name() const {
        return label ? *label : poly.to_string();
    }
};

/// A validated order O inside K: basis, basis traces and discriminant.
struct OrderBasis {
    FieldRecord field;
    RatMatrix basis_matrix;        // n x n, rows in power-basis coordinates
    std::vector<Int> trace_vector; // Tr(b_i)
    Int disc;                      // det of the trace Gram of the basis
};

/// The rank n-1 lattice O^0 = ker(Tr) with its trace form.
struct TraceZeroLattice {
    OrderBasis order;
    IntMatrix basis;  // (n-1) x n, coordinates in the order basis
    IntMatrix gram;   // (n-1) x (n-1), entries Tr(a_i a_j), even diagonal
    Int m;            // Tr(O) = mZ
};

/// Discriminant of a monic squarefree polynomial,
/// (-1)^{n(n-1)/2} Res(f, f'). Throws NotSeparable.
Int disc_poly(const Polynomial& f);

/// Exact count of real roots via a Sturm sequence. Throws NotSeparable.
long count_real_roots(const Polynomial& f);

/// Power traces p_k = Tr(theta^k) for k = 0..count, by Newton's identities.
std::vector<Int> power_traces(const Polynomial& f, long count);

/// Trace Gram matrix T_ij = Tr(b_i b_j) of an order basis. Throws NotAnOrder
/// if any entry fails to be integral.
IntMatrix trace_gram(const OrderBasis& order);

/// Dedekind's criterion: is Z[theta] maximal at p?
bool dedekind_is_p_maximal(const Polynomial& f, const Int& p);

/// Build an order from a record. With an explicit basis the trace pairing is
/// validated; without one the power order must be p-maximal at every p with
/// p^2 | disc_poly(f).
OrderBasis make_order(const FieldRecord& rec);

/// Trace-zero sublattice with its positive definite Gram matrix.
/// Requires a totally real field; asserts the determinant identity
/// |det gram| = n * disc / m^2 as a runtime invariant.
TraceZeroLattice trace_zero_lattice(const OrderBasis& order);

}  // namespace thetanf
