#include "harmfrob/arith.hpp"

#include <mutex>

namespace hf {

// B_1 = -1/2: the convention matching strict sums over 0 <= u < m.
Rational bernoulli(long l) {
    if (l < 0) throw std::invalid_argument("negative Bernoulli index");
    static std::mutex mu;
    static std::vector<Rational> table{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<long>(table.size()) <= l) {
        long m = static_cast<long>(table.size());
        Rational s = 0;
        for (long j = 0; j < m; ++j) s += binom_general(m + 1, j) * table[static_cast<size_t>(j)];
        table.push_back(-s / Rational(m + 1));
    }
    return table[static_cast<size_t>(l)];
}

}  // namespace hf
