#include "harmfrob/relations.hpp"

#include <stdexcept>

namespace hf {

namespace {

using Jobs = std::vector<std::function<Report()>>;

void quick_jobs(Jobs& j) {
    j.push_back([] { return check_adjoint_stuffle(5, 1, 0, 1, 1, 5); });
    j.push_back([] { return check_zeta2(5, 1, 10); });
    j.push_back([] { return check_finite_depth1(50, 2); });
    j.push_back([] { return check_expansion(5, 1, Composition{2}, 6, 6); });
    j.push_back([] { return check_iteration(5, 1, 2, 2, 6); });
    j.push_back([] { return run_identity(stuffle_har_identity(12, Composition{2, 1}, Composition{1})); });
}

void default_jobs(Jobs& j, const SuiteOptions& o) {
    for (int b = 0; b <= 2; ++b)
        for (int n1 = 1; n1 <= 2; ++n1)
            for (int n2 = 1; n2 <= 2; ++n2) {
                j.push_back([=] { return check_adjoint_stuffle(5, 1, b, n1, n2, 5); });
                j.push_back([=] { return check_adjoint_stuffle(7, 1, b, n1, n2, 5); });
            }
    j.push_back([] { return check_expansion(5, 1, Composition{2}, 20, 8); });
    j.push_back([] { return check_expansion(5, 1, Composition{2, 1}, 12, 6); });
    for (long p : {5L, 7L})
        for (auto I : {Composition{2}, Composition{3}, Composition{2, 1}, Composition{1, 2}})
            j.push_back([=] { return check_resummation(p, 1, I, 6, 8); });
    for (long p : {5L, 7L, 11L, 13L})
        for (int a : {1, 2}) j.push_back([=] { return check_zeta2(p, a, 10); });
    for (int n = 1; n <= 5; ++n) j.push_back([=] { return check_ahy(n, 50); });
    for (long p : {3L, 5L, 7L})
        for (int n = 1; n <= 4; ++n) j.push_back([=] { return check_iteration(p, 1, 2, n, 6); });
    for (int n : {2, 4}) j.push_back([=] { return check_finite_depth1(200, n); });
    for (int n : {3, 4}) {
        std::vector<long> ps;
        for (long p : primes_up_to(47))
            if (p >= 7) ps.push_back(p);
        j.push_back([=] { return check_kz_shape(n, ps); });
    }
    for (long p : {3L, 5L, 7L})
        j.push_back([=] { return check_alpha_independence_report(p, Composition{2, 1}, 2); });
    j.push_back([] { return check_action_depth1(5, 1, 2, 9, 8); });
    j.push_back([] { return run_identity(stuffle_har_identity(12, Composition{2, 1}, Composition{3})); });
    j.push_back([] { return run_identity(bcoeff_quasi_shuffle_identity(3, 4, 5)); });
    j.push_back([=] { return check_ihara_group_law(20, 5, o.seed + 1); });
    j.push_back([=] {
        ContractionOptions c;
        c.trials = 20;
        c.seed = o.seed;
        return check_contraction_suite(c);
    });
}

void dmr_jobs(Jobs& j) {
    const Word e1 = Word::e1(), e0e1 = Word::parse("01");
    j.push_back([=] { return check_dmr_shuffle(5, 1, e1, e1, 2, 5); });
    j.push_back([=] { return check_dmr_shuffle(5, 1, e1, e1, 1, 5); });
    j.push_back([=] { return check_dmr_shuffle(5, 1, Word(), Word(), 1, 5); });
    j.push_back([=] { return check_dmr_shuffle(5, 1, e1, e0e1, 1, 5); });
    j.push_back([=] { return check_dmr_shuffle(5, 1, e1, Word::parse("10"), 2, 5); });
}

}  // namespace

std::vector<std::string> suite_names() { return {"quick", "default", "dmr", "contraction"}; }

std::vector<Report> run_suite(const std::string& name, const SuiteOptions& o) {
    Jobs jobs;
    if (name == "quick") quick_jobs(jobs);
    else if (name == "default") default_jobs(jobs, o);
    else if (name == "dmr") dmr_jobs(jobs);
    else if (name == "contraction")
        jobs.push_back([=] {
            ContractionOptions c;
            c.seed = o.seed;
            return check_contraction_suite(c);
        });
    else throw std::invalid_argument("unknown suite: " + name);
    auto out = run_jobs(jobs, o.threads);
    if (!o.timing)
        for (auto& r : out) r.millis = 0;
    return out;
}

}  // namespace hf
