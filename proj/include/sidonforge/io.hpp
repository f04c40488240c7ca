#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sidonforge/continuum.hpp"
#include "sidonforge/repfn.hpp"

namespace sidonforge {

// Serialized set plus claimed cap, re-verifiable by exact computation.
// `verified` is true only when a fresh verify pass succeeded at creation or
// load time; it is never copied from the file.
struct SetCertificate {
    int schema_version = 1;
    SidonSet set;
    u64 achieved_g = 0;
    bool verified = false;
    nlohmann::json provenance;
};

// Runs the exact profile, records achieved_g, claims it if the set had no
// claim yet, and sets `verified` from a fresh check.
SetCertificate make_certificate(SidonSet set, nlohmann::json provenance);

nlohmann::json certificate_to_json(const SetCertificate& cert);
SetCertificate certificate_from_json(const nlohmann::json& j); // re-verifies

void write_certificate(const SetCertificate& cert, const std::filesystem::path& path);
SetCertificate load_certificate(const std::filesystem::path& path);

nlohmann::json group_to_json(const GroupSpec& g);
GroupSpec group_from_json(const nlohmann::json& j);

Flavor flavor_from_name(const std::string& name);

// One coefficient per line under a `N=<count>` header.
void write_step_csv(const StepFunction& f, const std::filesystem::path& path);
StepFunction load_step_csv(const std::filesystem::path& path);

nlohmann::json report_to_json(const MonteCarloReport& rep);

} // namespace sidonforge
