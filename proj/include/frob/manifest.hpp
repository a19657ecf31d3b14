#pragma once

#include "frob/coxeter.hpp"
#include "frob/frobenius.hpp"
#include "frob/pipeline.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frob {

struct manifest_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HarmonicExpectation {
    Rational degree;
    std::size_t kernel_dim = 0;
    std::vector<std::string> representatives;  // expression strings, model ring
};

// One catalogued example, parsed and degree-checked.
class Manifest {
  public:
    static Manifest load_file(const std::string& path);
    static Manifest parse(const std::string& json_text);
    std::string print() const;  // canonical JSON round-trip

    std::string name;
    std::string display;
    GroupLabel group = GroupLabel::H3;
    std::size_t n = 0;
    std::vector<Rational> degrees;
    Rational charge;
    std::string prepotential_text;
    std::string relation_text;
    std::vector<Rational> x_degrees;  // t1..tn then Z

    std::vector<std::vector<std::string>> intersection_form_text;  // upper triangle
    std::vector<std::string> laplacian_text;                       // optional
    std::vector<HarmonicExpectation> harmonic_spaces;              // optional
    std::vector<std::string> forward_text;
    std::vector<std::string> ansatz_maps_text;  // optional
    std::vector<std::string> ansatz_unknowns;
    std::vector<std::map<std::string, std::string>> solutions_text;
    std::vector<std::string> inverse_text;  // optional
    std::string z_poly_text;
    std::string radical_text;  // optional: s^2 = expr
    std::string discriminant_c_text, discriminant_q_text;  // optional
    std::vector<std::string> unity_text;                    // optional

    bool has_inverse() const { return !inverse_text.empty(); }
    bool has_discriminant() const { return !discriminant_q_text.empty(); }
    bool has_unity() const { return !unity_text.empty(); }
    bool has_ansatz() const { return !ansatz_maps_text.empty(); }

    RingPtr model_ring() const;
    FrobeniusData to_data() const;
    CoordinateBridge to_bridge(const FrobeniusModel& model) const;

    // intersection-form fixture parsed into the model ring (full symmetric)
    std::vector<std::vector<MultiPoly>> intersection_fixture(const RingPtr& ring) const;
    std::vector<RationalFunction> laplacian_fixture(const RingPtr& ring) const;

  private:
    void validate() const;
};

// constant-expression evaluator for values like "-3^26*5"
Rational parse_constant(const std::string& text);

std::vector<std::string> list_manifests(const std::string& dir);
std::string manifest_dir_default();

}  // namespace frob
