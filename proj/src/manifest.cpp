#include "frob/manifest.hpp"

#include "frob/parser.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace frob {

using nlohmann::json;

Rational parse_constant(const std::string& text) {
    static RingPtr empty = Ring::make({});
    RationalFunction v = parse_expression(text, empty);
    MultiPoly p = v.as_poly();
    if (p.is_zero()) return Rational(0);
    return p.constant_value().rational_value();
}

Manifest Manifest::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw manifest_error("cannot open manifest " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

Manifest Manifest::parse(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw manifest_error(std::string("manifest syntax error: ") + e.what());
    }
    Manifest m;
    try {
        m.name = j.at("name").get<std::string>();
        m.display = j.value("display", m.name);
        m.group = group_label_from_string(j.at("group").get<std::string>());
        m.n = j.at("n").get<std::size_t>();
        for (const auto& d : j.at("degrees")) m.degrees.push_back(rat_from_string(d));
        m.charge = rat_from_string(j.at("charge").get<std::string>());
        m.prepotential_text = j.at("prepotential").get<std::string>();
        m.relation_text = j.at("relation").get<std::string>();
        for (const auto& d : j.at("x_degrees")) m.x_degrees.push_back(rat_from_string(d));
        if (j.contains("intersection_form"))
            for (const auto& row : j.at("intersection_form")) {
                std::vector<std::string> r;
                for (const auto& e : row) r.push_back(e.get<std::string>());
                m.intersection_form_text.push_back(std::move(r));
            }
        if (j.contains("laplacian_t"))
            for (const auto& e : j.at("laplacian_t")) m.laplacian_text.push_back(e);
        if (j.contains("harmonic_spaces"))
            for (const auto& h : j.at("harmonic_spaces")) {
                HarmonicExpectation e;
                e.degree = rat_from_string(h.at("degree").get<std::string>());
                e.kernel_dim = h.at("kernel_dim").get<std::size_t>();
                for (const auto& r : h.at("representatives"))
                    e.representatives.push_back(r.get<std::string>());
                m.harmonic_spaces.push_back(std::move(e));
            }
        for (const auto& f : j.at("forward")) m.forward_text.push_back(f.get<std::string>());
        if (j.contains("ansatz")) {
            for (const auto& u : j.at("ansatz").at("unknowns"))
                m.ansatz_unknowns.push_back(u.get<std::string>());
            for (const auto& e : j.at("ansatz").at("maps"))
                m.ansatz_maps_text.push_back(e.get<std::string>());
        }
        if (j.contains("solutions"))
            for (const auto& s : j.at("solutions")) {
                std::map<std::string, std::string> sol;
                for (auto it = s.begin(); it != s.end(); ++it)
                    sol[it.key()] = it.value().get<std::string>();
                m.solutions_text.push_back(std::move(sol));
            }
        if (j.contains("inverse")) {
            for (const auto& e : j.at("inverse").at("t"))
                m.inverse_text.push_back(e.get<std::string>());
            m.z_poly_text = j.at("inverse").at("z_poly").get<std::string>();
            if (j.at("inverse").contains("radical") && !j.at("inverse").at("radical").is_null())
                m.radical_text = j.at("inverse").at("radical").get<std::string>();
        }
        if (j.contains("discriminant")) {
            m.discriminant_c_text = j.at("discriminant").at("c").get<std::string>();
            m.discriminant_q_text = j.at("discriminant").at("Q").get<std::string>();
        }
        if (j.contains("unity"))
            for (const auto& e : j.at("unity")) m.unity_text.push_back(e.get<std::string>());
    } catch (const json::exception& e) {
        throw manifest_error(std::string("manifest field error: ") + e.what());
    }
    m.validate();
    return m;
}

void Manifest::validate() const {
    if (n < 2 || degrees.size() != n) throw manifest_error(name + ": bad dimension/degrees");
    if (degrees[0] != 1) throw manifest_error(name + ": d_1 must be 1");
    if (degrees[n - 1] != Rational(1) - charge)
        throw manifest_error(name + ": degree consistency d_n = 1 - d violated");
    if (x_degrees.size() != n + 1) throw manifest_error(name + ": x_degrees must cover t and Z");
    Rational dn = degrees[n - 1];
    for (std::size_t i = 0; i < n; ++i)
        if (x_degrees[i] != 2 * degrees[i] / dn)
            throw manifest_error(name + ": deg_x t_i = 2 d_i / d_n violated at i=" +
                                 std::to_string(i + 1));
    if (forward_text.size() != n) throw manifest_error(name + ": forward maps must number n");
    if (!inverse_text.empty() && inverse_text.size() != n)
        throw manifest_error(name + ": inverse maps must number n");
    if (!unity_text.empty() && unity_text.size() != n)
        throw manifest_error(name + ": unity components must number n");
    if (!laplacian_text.empty() && laplacian_text.size() != n)
        throw manifest_error(name + ": laplacian fixtures must number n");
}

RingPtr Manifest::model_ring() const {
    std::vector<std::string> vars;
    for (std::size_t i = 1; i <= n; ++i) vars.push_back("t" + std::to_string(i));
    vars.push_back("Z");
    return Ring::make(vars, FieldTag::Q);
}

FrobeniusData Manifest::to_data() const {
    RingPtr ring = model_ring();
    FrobeniusData d;
    d.name = name;
    d.n = n;
    d.degrees = degrees;
    d.charge = charge;
    d.prepotential = parse_poly(prepotential_text, ring);
    d.relation = parse_poly(relation_text, ring);
    d.x_weights = x_degrees;
    return d;
}

CoordinateBridge Manifest::to_bridge(const FrobeniusModel& model) const {
    CoordinateBridge b;
    const RingPtr& ring = model.ring();
    for (const auto& f : forward_text) b.forward.push_back(parse_poly(f, ring));
    if (has_inverse()) {
        b.has_inverse = true;
        std::vector<std::string> vars;
        for (std::size_t i = 1; i <= n; ++i) vars.push_back("y" + std::to_string(i));
        vars.push_back("Z");
        if (!radical_text.empty()) vars.push_back("s");
        b.inverse_ring = Ring::make(vars, FieldTag::Q);
        for (const auto& t : inverse_text)
            b.inverse.push_back(parse_expression(t, b.inverse_ring));
        b.z_min_poly = parse_poly(z_poly_text, b.inverse_ring);
        if (!radical_text.empty())
            b.radical_square = parse_poly(radical_text, b.inverse_ring);
    }
    if (has_discriminant()) {
        b.has_discriminant = true;
        b.discriminant_c = parse_constant(discriminant_c_text);
        b.discriminant_q = parse_poly(discriminant_q_text, ring);
    }
    if (has_unity()) {
        b.has_unity = true;
        for (const auto& e : unity_text) b.unity.push_back(parse_poly(e, ring));
    }
    if (has_ansatz()) {
        b.has_ansatz = true;
        std::vector<std::string> vars = ring->names();
        for (const auto& u : ansatz_unknowns) vars.push_back(u);
        b.ansatz_ring = Ring::make(vars, FieldTag::Q);
        b.unknowns = ansatz_unknowns;
        for (const auto& t : ansatz_maps_text)
            b.ansatz.push_back(parse_poly(t, b.ansatz_ring));
        for (const auto& sol : solutions_text) {
            std::map<std::string, Rational> s;
            for (const auto& [k, v] : sol) s[k] = parse_constant(v);
            b.candidate_solutions.push_back(std::move(s));
        }
    }
    return b;
}

std::vector<std::vector<MultiPoly>> Manifest::intersection_fixture(const RingPtr& ring) const {
    std::vector<std::vector<MultiPoly>> g(n, std::vector<MultiPoly>(n, MultiPoly::zero(ring)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const std::string& text = intersection_form_text.at(i).at(j - i);
            g[i][j] = parse_poly(text, ring);
            g[j][i] = g[i][j];
        }
    return g;
}

std::vector<RationalFunction> Manifest::laplacian_fixture(const RingPtr& ring) const {
    std::vector<RationalFunction> out;
    for (const auto& text : laplacian_text) out.push_back(parse_expression(text, ring));
    return out;
}

std::string Manifest::print() const {
    json j;
    j["name"] = name;
    j["display"] = display;
    switch (group) {
        case GroupLabel::I2: j["group"] = "I2"; break;
        case GroupLabel::H3: j["group"] = "H3"; break;
        case GroupLabel::D4: j["group"] = "D4"; break;
        case GroupLabel::F4: j["group"] = "F4"; break;
        case GroupLabel::H4: j["group"] = "H4"; break;
    }
    j["n"] = n;
    std::vector<std::string> ds;
    for (const auto& d : degrees) ds.push_back(rat_to_string(d));
    j["degrees"] = ds;
    j["charge"] = rat_to_string(charge);
    j["prepotential"] = prepotential_text;
    j["relation"] = relation_text;
    std::vector<std::string> xs;
    for (const auto& d : x_degrees) xs.push_back(rat_to_string(d));
    j["x_degrees"] = xs;
    if (!intersection_form_text.empty()) j["intersection_form"] = intersection_form_text;
    if (!laplacian_text.empty()) j["laplacian_t"] = laplacian_text;
    if (!harmonic_spaces.empty()) {
        json arr = json::array();
        for (const auto& h : harmonic_spaces) {
            json e;
            e["degree"] = rat_to_string(h.degree);
            e["kernel_dim"] = h.kernel_dim;
            e["representatives"] = h.representatives;
            arr.push_back(e);
        }
        j["harmonic_spaces"] = arr;
    }
    j["forward"] = forward_text;
    if (!ansatz_maps_text.empty()) {
        j["ansatz"]["unknowns"] = ansatz_unknowns;
        j["ansatz"]["maps"] = ansatz_maps_text;
    }
    if (!solutions_text.empty()) j["solutions"] = solutions_text;
    if (!inverse_text.empty()) {
        j["inverse"]["t"] = inverse_text;
        j["inverse"]["z_poly"] = z_poly_text;
        if (!radical_text.empty())
            j["inverse"]["radical"] = radical_text;
        else
            j["inverse"]["radical"] = nullptr;
    }
    if (!discriminant_q_text.empty()) {
        j["discriminant"]["c"] = discriminant_c_text;
        j["discriminant"]["Q"] = discriminant_q_text;
    }
    if (!unity_text.empty()) j["unity"] = unity_text;
    return j.dump(2);
}

std::vector<std::string> list_manifests(const std::string& dir) {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

std::string manifest_dir_default() {
    if (const char* env = std::getenv("FROB_MANIFEST_DIR")) return env;
#ifdef FROB_DEFAULT_MANIFEST_DIR
    return FROB_DEFAULT_MANIFEST_DIR;
#else
    return "data/manifests";
#endif
}

}  // namespace frob
