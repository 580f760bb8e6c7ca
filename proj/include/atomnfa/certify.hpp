#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "atomnfa/langalg.hpp"

namespace atomnfa {

enum class CertKind { atomic, subatomic };

/// The guessed relational data witnessing that a small (sub)atomic
/// acceptor exists: a relation s together with tables p (lower path into
/// s), q (s into the upper path) and one t per symbol (the transition
/// endomorphism). Certificates never carry witnesses; verification
/// recomputes the maximal ones.
struct Certificate {
    CertKind kind = CertKind::atomic;
    int k = 0;
    std::uint64_t instance_digest = 0;
    Rel s;
    BitMatrix p;                // |lang states| x s.cols
    BitMatrix q;                // s.rows x upper carrier
    std::vector<BitMatrix> t;   // per symbol, s.rows x s.cols
};

/// Checks that p, q and all t are valid morphisms and that the diagram
///   i ; p ; q = i'    dr_a ; p = p ; t_a    t_a ; q = q ; d'_a
///   p ; q ; f' = f
/// commutes over the Nerode upper path. Throws NotReversePair or
/// ShapeMismatch for malformed instances; a failed equation returns false.
bool verify_atomic_certificate(const Dfa& a, const Dfa& b,
                               const Certificate& c, int k);

/// Overload for repeated verification against one instance.
bool verify_atomic_certificate(const DerivativeSystem& ds,
                               const Certificate& c, int k);

/// Same equations with the upper path over the syntactic monoid; the
/// lower path is computed from m viewed as a dfa and its opposite monoid
/// as the dfa of the reversed language.
bool verify_subatomic_certificate(const MonoidRecognizer& m,
                                  const Certificate& c, int k);

/// Overload for repeated verification: ds and syn as precomputed from m,
/// st_bound the size of the presented monoid.
bool verify_subatomic_certificate(const DerivativeSystem& ds,
                                  const MonoidRecognizer& syn, int st_bound,
                                  const Certificate& c, int k);

/// The acceptor packed inside a verifying certificate: states s.rows,
/// transitions the maximal lower witnesses of t_a, initial states the
/// lower witness of i;p, finals the rows of q hitting the class of the
/// empty word.
Nfa certificate_to_nfa(const Certificate& c, const LowerPath& lower);

/// Builds a certificate from an atomic nfa by closing its state
/// languages under unions and reading off the poset of irreducibles.
/// Throws NotAtomic / LanguageMismatch / NotReversePair.
Certificate extract_certificate(const Nfa& n, const Dfa& a, const Dfa& b);

/// Subatomic analogue over the monoid presentation.
Certificate extract_subatomic_certificate(const Nfa& n,
                                          const MonoidRecognizer& m);

/// A least witness family: its join-irreducible count and the semilattice
/// dfa realizing it (feed to nfa_of_join_irreducibles for the acceptor).
struct OracleResult {
    int value = 0;
    JslDfa witness;
};

/// Least |J(S)| <= kmax over union-closed, derivative-closed families
/// between the derivative semilattice and the boolean algebra of Nerode
/// classes; equals the least atomic acceptor size. The budget guards the
/// materialized boolean algebra (2^carrier <= budget) and the search.
std::optional<OracleResult> na_oracle(const Dfa& a, const Dfa& b, int kmax,
                                      std::uint64_t budget = kDefaultFamilyBudget);

/// Least |J(S)| over families between the derivative semilattice and the
/// boolean algebra of syntactic classes; equals the least subatomic
/// acceptor size.
std::optional<OracleResult> nmu_oracle(const MonoidRecognizer& m, int kmax,
                                       std::uint64_t budget = kDefaultFamilyBudget);

}  // namespace atomnfa
