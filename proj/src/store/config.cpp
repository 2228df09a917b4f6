#include "harmfrob/store.hpp"

#include <cstdlib>

namespace hf {

void RunConfig::apply_env() {
    if (cache_dir.empty())
        if (const char* d = std::getenv("HARMFROB_CACHE_DIR")) cache_dir = d;
    if (const char* k = std::getenv("HARMFROB_PRECISION")) {
        try {
            precision = std::stol(k);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("HARMFROB_PRECISION is not an integer: ") + k);
        }
    }
}

void RunConfig::validate(int largest_weight) const {
    if (precision < 1) throw std::invalid_argument("precision must be at least 1");
    if (weight_cutoff != 0 && weight_cutoff < largest_weight)
        throw std::invalid_argument("weight cutoff below the largest requested weight");
    for (long p : primes)
        if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
    for (int a : alphas)
        if (a < 1) throw std::invalid_argument("alpha must be positive");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "text") return OutputFormat::text;
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown output format: " + s);
}

}  // namespace hf
