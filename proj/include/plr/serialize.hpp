#pragma once

// JSON and CSV output. Complex numbers are [re, im] pairs; every document
// carries a provenance block {tool, version, config_hash}.

#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <string>

#include "plr/closure.hpp"
#include "plr/verify.hpp"

namespace plr {

using json = nlohmann::ordered_json;

struct Provenance {
    std::string version;
    std::uint64_t config_hash = 0;
};

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);
json provenance_json(const Provenance& p);

json to_json(cplx z);
cplx complex_from_json(const json& j);

json to_json(const SpectralData& d);
// Rebuilds from branch points and divisor, then checks the stored constants
// agree within rel_tol (InvalidInput otherwise).
SpectralData spectral_from_json(const json& j, double rel_tol = 1e-9);
// FNV-1a of the serialised constants; identifies the curve behind derived outputs.
std::string spectral_hash(const SpectralData& d);

json to_json(const ClosureReport& r);
json to_json(const ResidualReport& r);
json to_json(const GridSpec& g);
json to_json(const CurveGrid& g, bool include_samples = true);

// Header s,t,x,y,z,q_re,q_im,kappa,torsion; 15 significant digits, LF endings.
// The first line is a '#' comment with the provenance.
// Further '#' lines carry the notes.
void write_csv(std::ostream& out, const CurveGrid& g, const Provenance& p,
               const std::vector<std::string>& notes = {});
std::string format_number(double v);

}  // namespace plr
