#pragma once

#include "harmfrob/adjoint.hpp"

#include "json.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hf {

struct Report {
    std::string name;
    nlohmann::json params = nlohmann::json::object();
    bool exact_zero = false;              // defect is exactly zero
    long defect_valuation = 0;            // meaningful when !exact_zero
    long threshold = 0;
    bool pass = false;
    std::string status = "ok";            // ok | parameter-error | inadmissible-pair | report-only
    std::string note;
    nlohmann::json details;               // optional per-case data
    long millis = 0;

    nlohmann::json to_json(bool timing = true) const;
};
std::string reports_json(const std::vector<Report>& reports, bool timing = true);

// One evaluable quantity.
struct Atom {
    enum class Kind { constant, har_exact, har_prime, adjoint, bcoeff, zeta1 };
    Kind kind = Kind::constant;
    long p = 0;
    int alpha = 1;
    long m = 0;                 // har_exact upper bound
    int b = 0;                  // adjoint slot or B index
    Composition index;          // har / adjoint index, zeta1 uses parts[0]
    std::vector<int> exponents; // bcoeff
    Rational value;             // constant

    static Atom constant_of(const Rational& q);
    static Atom har_at(long m, const Composition& I);
    static Atom har_pa(long p, int alpha, const Composition& I);
    static Atom adjoint_entry(long p, int alpha, int b, const Composition& I);
    static Atom b_coefficient(std::vector<int> exponents, int b);
    static Atom zeta(long p, int alpha, int n);

    bool exact() const { return kind == Kind::constant || kind == Kind::har_exact || kind == Kind::bcoeff; }
    std::string str() const;
};

struct Product {
    Rational coeff;
    std::vector<Atom> atoms;
};

// sum of products == 0, either exactly or to p^threshold
struct IdentityCheck {
    std::string name;
    nlohmann::json params = nlohmann::json::object();
    std::vector<Product> plan;
    bool exact = false;
    long p = 0;
    long precision = 0;         // atoms are resolved to this absolute precision
    long threshold = 0;
};

Report run_identity(const IdentityCheck& c);

// shared adjoint tables, one per (p, alpha, K)
AdjointTable& shared_table(long p, int alpha, long K);

// identity builders
IdentityCheck stuffle_har_identity(long m, const Composition& I, const Composition& J);
IdentityCheck bcoeff_quasi_shuffle_identity(int l1, int l2, int b);
IdentityCheck adjoint_stuffle_identity(long p, int alpha, int b, int n1, int n2, long K);

// bespoke checks
Report check_adjoint_stuffle(long p, int alpha, int b, int n1, int n2, long K, int weight_cutoff = 12);
Report check_expansion(long p, int alpha, const Composition& I, long m_max, long K);
Report check_resummation(long p, int alpha, const Composition& I, int B_max, long K);
Report check_zeta2(long p, int alpha, long K);
Report check_ahy(int n, long pmax);
Report check_iteration(long p, int alpha0, int alpha, int n, long K);
Report check_finite_depth1(long pmax, int n);
Report check_kz_shape(int n, const std::vector<long>& primes);
Report check_alpha_independence_report(long p, const Composition& I, int alpha_max);
Report check_action_depth1(long p, int alpha, long m, int N, long K);

struct ContractionOptions {
    long p = 5;
    int alpha0 = 1;
    int trials = 100;
    int N = 8;
    int iterations = 3;
    unsigned long long seed = 1;
};
Report check_contraction_suite(const ContractionOptions& o);
// associativity and inverse of the Ihara product over Q
Report check_ihara_group_law(int trials, int N, unsigned long long seed);

// Sign/indexing variants of the shuffle displays; the report lists which pass.
struct DmrVariant {
    bool sign_n = true;       // the (-1)^n factor of the first display
    bool antipode_sign = true;
    std::string label() const;
};
Report check_dmr_shuffle(long p, int alpha, const Word& w, const Word& w2, int n, long K);

struct SuiteOptions {
    unsigned long long seed = 20240601ull;
    unsigned threads = 1;
    bool timing = true;
};
std::vector<std::string> suite_names();
// throws std::invalid_argument for unknown suites
std::vector<Report> run_suite(const std::string& name, const SuiteOptions& o);
// runs jobs on a small pool, results in job order
std::vector<Report> run_jobs(const std::vector<std::function<Report()>>& jobs, unsigned threads);

// random group-like series over Q: exp of a random Lie combination, weight-s part scaled by scale^s
NcSeries<Rational> random_grouplike(std::mt19937_64& rng, int N, const Rational& scale = 1);

}  // namespace hf
