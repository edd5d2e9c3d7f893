#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace catapt {

// Named RNG stream. (master_seed, stream_label, replicate) maps to a
// generator state through a pure hash, so a grid of replicates can be
// evaluated in any order (or on any number of threads) with identical
// results.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::string stream_label;

    SeedSpec with_label(std::string_view label) const {
        return SeedSpec{master_seed, std::string(label)};
    }
};

// Counter-style generator: a splitmix64 walk from a hashed state. Satisfies
// UniformRandomBitGenerator. We keep our own uniform/normal transforms
// instead of <random> distributions, whose algorithms are
// implementation-defined; outputs here are bit-stable everywhere.
class Rng {
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t state) : state_(state) {}
    Rng(const SeedSpec& seed, std::uint64_t replicate);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~static_cast<result_type>(0); }

    result_type operator()();

    // uniform on [0, 1)
    double uniform();
    // uniform on {0, 1, ..., bound-1}, unbiased
    std::uint64_t uniform_below(std::uint64_t bound);
    // standard normal (Box-Muller, two uniforms per variate)
    double normal();

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_below(i)]);
        }
    }

  private:
    std::uint64_t state_;
};

// One multinomial draw of n items over `probs` (must be non-negative and sum
// to 1 within 1e-12). Marginal of cell j is Binomial(n, probs[j]).
std::vector<long> multinomial_sample(long n, const std::vector<double>& probs, Rng& rng);
std::vector<long> multinomial_sample(long n, const std::vector<double>& probs,
                                     const SeedSpec& seed, std::uint64_t replicate);

// Uniform m-subset of {1, ..., population}, returned sorted.
std::vector<int> subsample_without_replacement(int population, int m, Rng& rng);
std::vector<int> subsample_without_replacement(int population, int m, const SeedSpec& seed,
                                               std::uint64_t replicate);

// Run f(i) for i in [0, n) across up to n_threads workers. Work items must
// be independent; per-item RNG substreams keep results schedule-free.
void parallel_for(int n, int n_threads, const std::function<void(int)>& f);

} // namespace catapt
