#include "catapt/rng.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

#include "catapt/error.hpp"

namespace catapt {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

} // namespace

Rng::Rng(const SeedSpec& seed, std::uint64_t replicate) {
    std::uint64_t s = mix64(seed.master_seed ^ kGolden);
    s = mix64(s ^ fnv1a(seed.stream_label));
    s = mix64(s ^ replicate);
    state_ = s;
}

Rng::result_type Rng::operator()() {
    state_ += kGolden;
    return mix64(state_);
}

double Rng::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
    if (bound == 0) raise(errc::domain_error, "uniform_below: bound must be positive");
    // rejection from the top to avoid modulo bias
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do {
        x = (*this)();
    } while (x >= limit);
    return x % bound;
}

double Rng::normal() {
    // Box-Muller, cosine branch; u1 in (0,1] so log stays finite
    const double u1 = (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
}

std::vector<long> multinomial_sample(long n, const std::vector<double>& probs, Rng& rng) {
    if (n < 1) raise(errc::domain_error, "multinomial_sample: n must be >= 1");
    if (probs.empty()) raise(errc::domain_error, "multinomial_sample: empty probability vector");
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) raise(errc::domain_error, "multinomial_sample: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        raise(errc::domain_error, "multinomial_sample: probabilities must sum to 1");

    std::vector<double> cum(probs.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < probs.size(); ++j) {
        acc += probs[j];
        cum[j] = acc;
    }
    cum.back() = total; // guard the last bucket against rounding

    std::vector<long> counts(probs.size(), 0);
    for (long i = 0; i < n; ++i) {
        const double u = rng.uniform() * total;
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const std::size_t j = std::min<std::size_t>(it - cum.begin(), probs.size() - 1);
        ++counts[j];
    }
    return counts;
}

std::vector<long> multinomial_sample(long n, const std::vector<double>& probs,
                                     const SeedSpec& seed, std::uint64_t replicate) {
    Rng rng(seed, replicate);
    return multinomial_sample(n, probs, rng);
}

std::vector<int> subsample_without_replacement(int population, int m, Rng& rng) {
    if (m < 1 || m > population)
        raise(errc::domain_error, "subsample_without_replacement: need 1 <= m <= population");
    std::vector<int> ids(population);
    std::iota(ids.begin(), ids.end(), 1);
    // partial Fisher-Yates: the first m entries are a uniform subset
    for (int i = 0; i < m; ++i) {
        const int j = i + static_cast<int>(rng.uniform_below(population - i));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(m);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<int> subsample_without_replacement(int population, int m, const SeedSpec& seed,
                                               std::uint64_t replicate) {
    Rng rng(seed, replicate);
    return subsample_without_replacement(population, m, rng);
}

void parallel_for(int n, int n_threads, const std::function<void(int)>& f) {
    if (n <= 0) return;
    const int workers = std::max(1, std::min(n_threads, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (int i = w; i < n; i += workers) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace catapt
