#include "normlab/prime_set.hpp"

#include <stdexcept>
#include <string>

namespace normlab {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

PrimeSet::PrimeSet(std::vector<std::uint32_t> primes) : primes_(std::move(primes)) {
    if (primes_.empty() || primes_.size() > 8)
        throw std::invalid_argument("prime set must hold between 1 and 8 primes");
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (!is_prime(primes_[i]))
            throw std::invalid_argument(std::to_string(primes_[i]) + " is not prime");
        if (i > 0 && primes_[i] <= primes_[i - 1])
            throw std::invalid_argument("primes must be strictly increasing");
    }
}

}  // namespace normlab
