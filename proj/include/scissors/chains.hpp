#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "scissors/abgroup.hpp"
#include "scissors/matrix.hpp"

namespace scissors {

/**
 * Bounded chain complex of free Z-modules in degrees lo..hi. boundary(n)
 * maps C_n to C_{n-1}; column j is the boundary of the j-th basis element.
 * Construction checks shapes and that consecutive boundaries compose to 0.
 */
class ChainComplex
{
    public:
        ChainComplex() = default;

        /// boundaries[k] is the boundary out of degree lo + k + 1.
        ChainComplex(int lo, std::vector<std::size_t> ranks, std::vector<SparseMatrix> boundaries);

        int lo() const { return lo_; }
        int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
        bool empty() const { return ranks_.empty(); }

        /// 0 outside lo..hi.
        std::size_t rank(int n) const;

        /// A zero matrix of the right shape outside the stored range.
        SparseMatrix boundary(int n) const;

        const std::vector<std::size_t>& ranks() const { return ranks_; }

    private:
        int lo_ = 0;
        std::vector<std::size_t> ranks_;
        std::vector<SparseMatrix> boundaries_;
};

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);

/// C with degree-n summand Z -(1)-> Z added in degrees n, n-1.
ChainComplex add_acyclic_pair(const ChainComplex& c, int n);

/// Conjugates each boundary by unimodular base changes g_n:
/// boundary(n) becomes g_{n-1} boundary(n) g_n^-1.
ChainComplex change_basis(const ChainComplex& c, const std::vector<IntMatrix>& g,
                          const std::vector<IntMatrix>& g_inverse);

/// Per-degree matrices (target rank x source rank) commuting with boundaries.
class ChainMap
{
    public:
        ChainMap() = default;

        /// matrices[k] acts in degree source.lo() + k; missing degrees are 0.
        ChainMap(ChainComplex source, ChainComplex target, std::vector<SparseMatrix> matrices);

        const ChainComplex& source() const { return source_; }
        const ChainComplex& target() const { return target_; }

        /// A zero matrix of the right shape outside the source range.
        SparseMatrix in_degree(int n) const;

        struct Level
        {
            int degree = 0;
            bool injective = false;
            IntVector cokernel_torsion;
        };

        /// Injectivity and cokernel torsion per source degree.
        std::vector<Level> levels() const;
        bool levelwise_injective() const;

        static ChainMap identity(const ChainComplex& c);
        static ChainMap zero(const ChainComplex& source, const ChainComplex& target);

    private:
        ChainComplex source_;
        ChainComplex target_;
        std::vector<SparseMatrix> matrices_;
};

/// Homology groups H_lo..H_hi.
struct HomologyType
{
    int lo = 0;
    std::vector<GroupInvariants> groups;

    const GroupInvariants& at(int n) const;  // trivial group outside the range

    /// "H0=Z^1 H1=0 H2=Z^1"
    std::string to_string() const;

    /// Degreewise equality, trivial groups outside either range.
    friend bool operator==(const HomologyType& a, const HomologyType& b);
};

HomologyType homology(const ChainComplex& c);

/// Alternating sum of ranks; checked against homology ranks.
long euler_char(const ChainComplex& c);

/// Bounded complexes over Z are quasi-isomorphic iff their homology agrees.
bool quasi_iso_type_equal(const ChainComplex& c, const ChainComplex& d);

/// Image in K0(Z) = Z: the alternating sum of homology ranks.
long k0_class(const ChainComplex& c);

enum class PushoutMethod
{
    Coordinate,  // f sends basis vectors to distinct signed basis vectors
    Split,       // f split injective; quotient basis from Smith form
    Cone,        // cokernel of f has torsion; homotopy pushout via mapping cone
};

struct PushoutResult
{
    ChainComplex complex;
    ChainMap from_b;
    ChainMap from_c;
    PushoutMethod method = PushoutMethod::Coordinate;
};

/// (B ⊕ C) / A along a ↦ (f a, -g a); f must be levelwise injective.
/// Throws NotACofibration otherwise, NotComposable when sources differ.
PushoutResult pushout(const ChainMap& f, const ChainMap& g);

}  // namespace scissors
