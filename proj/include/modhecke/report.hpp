#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "modhecke/analytic.hpp"
#include "modhecke/exact.hpp"
#include "modhecke/hecke.hpp"
#include "modhecke/hopf.hpp"
#include "modhecke/qseries.hpp"

namespace modhecke {

using json = nlohmann::ordered_json;

json to_json(const Rational& r);
json to_json(const Cyclotomic& c);
json to_json(const Mat& m);
json to_json(const QSeries& f);
json to_json(const H1Elem& h);
json to_json(const Cochain& c);
json to_json(const FormValue& v);
json to_json(const HeckeElem& F);

/// "a,b,c,d" -> [[a,b],[c,d]]
Mat parse_mat(const std::string& s);
/// "d1^2 d3 X^2 Y", or "1" for the unit
Mono parse_mono(const std::string& s);
/// "a+bi", "a-bi", "bi", "a"
Complex parse_complex(const std::string& s);
/// E4, E6, eta4, Delta, optionally "|a,b,c,d"
FormValue parse_form(const std::string& s);

/// default truncation order, overridden by MODHECKE_ORDER
long default_order();

struct Check {
    std::string id;
    std::string anchor;
    std::string status;  // pass, fail, skipped
    std::string detail;
};

struct Report {
    std::string suite;
    std::vector<Check> checks;

    void add(std::string id, std::string anchor, bool ok, std::string detail = {});
    /// true iff every non-skipped check passed
    bool ok() const;
    /// checks sorted by id
    void sort();
    json to_json() const;
    std::string to_text() const;
};

struct VerifyConfig {
    long order = 60;
    uint64_t seed = 1;
    long max_entry = 10;
    int triples = 200;
    int pairs = 10;
    int samples = 50;
};

const std::vector<std::string>& suite_names();
/// throws std::invalid_argument for an unknown suite
Report verify_suite(const std::string& name, const VerifyConfig& cfg);

/// product of elementary matrices (T^k, S, diag(p,1), diag(1,p)) with entries bounded by max_entry
Mat sample_gl2(std::mt19937_64& rng, long max_entry);

}  // namespace modhecke
