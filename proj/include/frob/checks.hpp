#pragma once

#include "frob/manifest.hpp"
#include "frob/report.hpp"

#include <set>
#include <string>

namespace frob {

// Known ids: eta, euler, wdvv, intersection-form-fixture, laplacian-fixtures,
// harmonic-spaces, bridge-forward, bridge-inverse, discriminant, unity,
// derive-coefficients
const std::set<std::string>& known_check_ids();

struct CheckSelection {
    std::set<std::string> ids;  // empty = all
    bool wants(const std::string& id) const { return ids.empty() || ids.count(id); }
};

VerificationReport run_checks(const Manifest& manifest, const CheckSelection& selection);

}  // namespace frob
