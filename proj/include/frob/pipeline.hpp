#pragma once

#include "frob/coxeter.hpp"
#include "frob/frobenius.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace frob {

// Monomials in (t, Z) of a prescribed x-degree, Z-exponent < deg_Z P.
struct GradedMonomialSpace {
    Rational degree;
    std::vector<Monomial> monomials;
};

GradedMonomialSpace graded_space(const FrobeniusModel& model, const Rational& degree);

// Exact kernel of coefficients -> Delta(sum a_i m_i) over the graded space.
struct HarmonicSolution {
    GradedMonomialSpace space;
    std::vector<std::vector<Rational>> kernel;  // coefficient vectors
    MultiPoly element(const FrobeniusModel& model, std::size_t k) const;
};

HarmonicSolution harmonic_elements(const FrobeniusModel& model, const Rational& degree);

// Everything the manifest supplies about one coordinate bridge.
struct CoordinateBridge {
    std::vector<MultiPoly> forward;  // y_i(t, Z), model ring

    bool has_inverse = false;
    RingPtr inverse_ring;  // y1..yn, Z [, s]
    std::vector<RationalFunction> inverse;
    MultiPoly z_min_poly;                      // in (y, Z)
    std::optional<MultiPoly> radical_square;   // s^2 - (...) = 0 given as (...)

    bool has_discriminant = false;
    Rational discriminant_c;
    MultiPoly discriminant_q;  // Q(t, Z), model ring

    bool has_unity = false;
    std::vector<MultiPoly> unity;  // e^i(y) components as (t, Z) polynomials

    bool has_ansatz = false;
    RingPtr ansatz_ring;  // t1..tn, Z, unknowns
    std::vector<std::string> unknowns;
    std::vector<MultiPoly> ansatz;  // parameterized forward maps
    std::vector<std::map<std::string, Rational>> candidate_solutions;
};

struct CheckResult {
    bool pass = true;
    std::vector<std::string> failures;
    void fail(std::string what) {
        pass = false;
        failures.push_back(std::move(what));
    }
};

// (A) Saito form with y -> y(t,Z) substituted against (B) the tensorial
// transform of g^{ij}(t); plus x-homogeneity and polynomiality of the
// derivatives.
CheckResult verify_bridge(const FrobeniusModel& model, const CoxeterModel& cox,
                          const CoordinateBridge& bridge);

CheckResult invert_bridge_check(const FrobeniusModel& model, const CoordinateBridge& bridge);

CheckResult jacobian_discriminant_check(const FrobeniusModel& model, const CoxeterModel& cox,
                                        const CoordinateBridge& bridge);

// e^i(y) = d y_i / d t_1; checked polynomial and against the stated fixture.
CheckResult unity_field_check(const FrobeniusModel& model, const CoordinateBridge& bridge);
std::vector<QuotientElement> unity_field(const FrobeniusModel& model,
                                         const CoordinateBridge& bridge);

// Step-4 assembly: parameterized forward maps built from the computed
// harmonic kernels and the stored harmonic invariant set.
struct Ansatz {
    RingPtr ring;  // t1..tn, Z, fresh unknowns
    std::vector<std::string> unknowns;
    std::vector<MultiPoly> maps;
};
Ansatz ansatz_assembly(const FrobeniusModel& model, const CoxeterModel& cox);

// One solution of the coefficient equations: assigned values plus names the
// elimination left free (valid for every value).
struct CoefficientSolution {
    std::map<std::string, Rational> values;
    std::vector<std::string> free_unknowns;
};

struct MatchReport {
    enum class Status { Solved, CandidateVerified, Unsolved, Inconsistent } status;
    std::vector<CoefficientSolution> solutions;
    bool candidate_is_member = false;   // a manifest candidate solves the system
    std::size_t candidate_index = 0;    // which reported solution matches it
    std::string detail;
};

// Steps 5-7: equate both g^{ij}(y(t)) routes and solve for the unknowns by
// iterated linear elimination with exact univariate branching; falls back to
// verifying manifest-supplied candidate values.
MatchReport coefficient_match(const FrobeniusModel& model, const CoxeterModel& cox,
                              const RingPtr& ext_ring, const std::vector<std::string>& unknowns,
                              const std::vector<MultiPoly>& maps,
                              const std::vector<std::map<std::string, Rational>>& candidates);

// Substitute a solution into parameterized maps, landing in the model ring.
std::vector<MultiPoly> apply_solution(const FrobeniusModel& model, const RingPtr& ext_ring,
                                      const std::vector<MultiPoly>& maps,
                                      const CoefficientSolution& sol);

}  // namespace frob
