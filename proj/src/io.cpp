#include "sidonforge/io.hpp"

#include <fstream>

namespace sidonforge {

using nlohmann::json;

json group_to_json(const GroupSpec& g) {
    switch (g.kind()) {
        case GroupKind::IntegerInterval: return {{"kind", "interval"}, {"n", g.param()}};
        case GroupKind::Cyclic:          return {{"kind", "cyclic"}, {"q", g.param()}};
        case GroupKind::ProductPP:       return {{"kind", "product_pp"}, {"p", g.param()}};
    }
    fail(Errc::InvalidGroup, "group_to_json: bad kind");
}

GroupSpec group_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "interval") return GroupSpec::interval(j.at("n").get<u64>());
    if (kind == "cyclic") return GroupSpec::cyclic(j.at("q").get<u64>());
    if (kind == "product_pp") return GroupSpec::product_pp(j.at("p").get<u64>());
    fail(Errc::InvalidGroup, "group_from_json: unknown kind '" + kind + "'");
}

Flavor flavor_from_name(const std::string& name) {
    if (name == "ordered") return Flavor::Ordered;
    if (name == "restricted") return Flavor::Restricted;
    if (name == "unordered") return Flavor::Unordered;
    fail(Errc::InvalidParameter, "unknown flavor '" + name + "'");
}

SetCertificate make_certificate(SidonSet set, json provenance) {
    SetCertificate cert;
    RepProfile prof = rep_profile(set);
    cert.achieved_g = prof.max_for(set.flavor);
    if (!set.claimed_g) set.claimed_g = cert.achieved_g;
    cert.verified = verify_g_sidon(set, *set.claimed_g, set.flavor).ok;
    cert.set = std::move(set);
    cert.provenance = std::move(provenance);
    return cert;
}

json certificate_to_json(const SetCertificate& cert) {
    json elems = json::array();
    bool pairs = cert.set.group.kind() == GroupKind::ProductPP;
    for (const GroupElement& e : cert.set.elements) {
        if (pairs) elems.push_back(json::array({e.a, e.b}));
        else elems.push_back(e.a);
    }
    json j{
        {"schema_version", cert.schema_version},
        {"group", group_to_json(cert.set.group)},
        {"elements", std::move(elems)},
        {"flavor", flavor_name(cert.set.flavor)},
        {"achieved_g", cert.achieved_g},
        {"verified", cert.verified},
        {"provenance", cert.provenance},
    };
    if (cert.set.claimed_g) j["claimed_g"] = *cert.set.claimed_g;
    else j["claimed_g"] = nullptr;
    return j;
}

SetCertificate certificate_from_json(const json& j) {
    int version = j.at("schema_version").get<int>();
    if (version != 1)
        fail(Errc::InvalidParameter, "certificate schema_version " + std::to_string(version) + " unsupported");

    GroupSpec g = group_from_json(j.at("group"));
    SidonSet set{g, {}, std::nullopt, flavor_from_name(j.at("flavor").get<std::string>())};
    if (g.kind() == GroupKind::ProductPP) {
        std::vector<std::pair<u64, u64>> ps;
        for (const json& e : j.at("elements"))
            ps.emplace_back(e.at(0).get<u64>(), e.at(1).get<u64>());
        SidonSet tmp = SidonSet::from_pairs(g, ps);
        set.elements = std::move(tmp.elements);
    } else {
        std::vector<u64> vs;
        for (const json& e : j.at("elements")) vs.push_back(e.get<u64>());
        SidonSet tmp = SidonSet::from_values(g, vs);
        set.elements = std::move(tmp.elements);
    }
    if (j.contains("claimed_g") && !j.at("claimed_g").is_null())
        set.claimed_g = j.at("claimed_g").get<u64>();

    // Fresh verification; the file's own flags are not trusted.
    SetCertificate cert = make_certificate(std::move(set), j.value("provenance", json::object()));
    return cert;
}

void write_certificate(const SetCertificate& cert, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::InvalidParameter, "cannot open '" + path.string() + "' for writing");
    out << certificate_to_json(cert).dump(2) << "\n";
}

SetCertificate load_certificate(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::InvalidParameter, "cannot open '" + path.string() + "'");
    json j = json::parse(in); // throws json::parse_error on bad input
    return certificate_from_json(j);
}

void write_step_csv(const StepFunction& f, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::InvalidParameter, "cannot open '" + path.string() + "' for writing");
    out << "N=" << f.pieces() << "\n";
    char buf[64];
    for (int i = 0; i < f.pieces(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", f.coeffs[i]);
        out << buf << "\n";
    }
}

StepFunction load_step_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::InvalidParameter, "cannot open '" + path.string() + "'");
    std::string header;
    if (!std::getline(in, header) || header.rfind("N=", 0) != 0)
        fail(Errc::InvalidParameter, "step csv: missing N=<count> header");
    int n = std::stoi(header.substr(2));
    if (n < 1) fail(Errc::InvalidParameter, "step csv: bad piece count");
    Eigen::ArrayXd coeffs(n);
    std::string line;
    for (int i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            fail(Errc::InvalidParameter, "step csv: expected " + std::to_string(n) + " coefficients");
        coeffs[i] = std::stod(line);
        if (coeffs[i] < 0.0) fail(Errc::InvalidParameter, "step csv: negative coefficient");
    }
    return StepFunction{std::move(coeffs)};
}

json report_to_json(const MonteCarloReport& rep) {
    return json{
        {"n", rep.n},
        {"trials", rep.trials},
        {"eps", rep.eps},
        {"seed", rep.seed},
        {"target_integral", rep.target_integral},
        {"size_threshold", rep.size_threshold},
        {"rep_threshold", rep.rep_threshold},
        {"successes", rep.successes},
        {"success_rate", rep.success_rate},
        {"size", json{{"mean", rep.size_mean},
                      {"expected", rep.size_expected},
                      {"min", rep.size_min},
                      {"max", rep.size_max}}},
        {"max_r", json{{"mean", rep.max_r_mean}, {"max", rep.max_r_max}}},
    };
}

} // namespace sidonforge
