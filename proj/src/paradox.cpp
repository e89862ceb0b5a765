#include "weakreal/paradox.hpp"

#include <algorithm>
#include <stdexcept>

namespace weakreal {

namespace {

constexpr double kCertaintyTol = 1e-10;
constexpr int kMaxScanDim = 20;

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

KeyParadox key_nbox(int n) {
    if (n < 3) throw std::invalid_argument("key N-box paradox requires N >= 3");
    Rational scale(1, n - 2);
    ExactWeakVector wv(static_cast<std::size_t>(n), CSqrt2(QSqrt2(scale)));
    wv.back() = CSqrt2(QSqrt2(-scale));
    return KeyParadox{n, std::move(wv)};
}

ExactWeakVector split_weak_value(const ExactWeakVector& wv, std::size_t index,
                                 const ExactWeakVector& parts) {
    if (index >= wv.size()) throw std::out_of_range("split index out of range");
    if (parts.empty()) throw std::invalid_argument("split needs at least one part");
    CSqrt2 sum;
    for (const auto& p : parts) sum += p;
    if (sum != wv[index])
        throw std::invalid_argument("split parts do not sum to the replaced weak value");
    ExactWeakVector out;
    out.reserve(wv.size() + parts.size() - 1);
    for (std::size_t i = 0; i < wv.size(); ++i) {
        if (i == index)
            out.insert(out.end(), parts.begin(), parts.end());
        else
            out.push_back(wv[i]);
    }
    return out;
}

std::vector<CertaintyAssertion> find_certainties(const std::vector<cplx>& wv) {
    const int d = static_cast<int>(wv.size());
    if (d > kMaxScanDim)
        throw std::invalid_argument("dimension " + std::to_string(d) +
                                    " exceeds the exhaustive bipartition scan limit of " +
                                    std::to_string(kMaxScanDim));
    if (d < 1) throw std::invalid_argument("empty weak-value vector");
    cplx total(0.0);
    for (const auto& w : wv) total += w;
    if (std::abs(total - cplx(1.0)) > 1e-9)
        throw std::invalid_argument("weak values must sum to 1");

    std::vector<CertaintyAssertion> out;
    const std::uint32_t full = (1u << d) - 1u;
    // proper nonempty subsets only; both halves of each bipartition are
    // visited, so an assertion is recorded once per certain side
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        cplx s(0.0);
        for (int i = 0; i < d; ++i)
            if (mask & (1u << i)) s += wv[static_cast<std::size_t>(i)];
        if (std::abs(s - cplx(1.0)) < kCertaintyTol) {
            CertaintyAssertion a;
            for (int i = 0; i < d; ++i)
                ((mask >> i) & 1u ? a.support : a.complement).push_back(i);
            out.push_back(std::move(a));
        }
    }
    return out;
}

std::optional<ParadoxCertificate> certify_paradox(std::vector<CertaintyAssertion> assertions) {
    const std::size_t n = assertions.size();
    if (n < 2) return std::nullopt;

    std::vector<int> all = assertions.front().support;
    for (std::size_t i = 1; i < n; ++i) all = intersect_sorted(all, assertions[i].support);
    if (!all.empty()) return std::nullopt;

    // smallest conflicting subset, searched by size; subsets enumerated in
    // lexicographic index order for determinism
    for (std::size_t k = 2; k <= n; ++k) {
        // iterate combinations via the standard prev_permutation trick
        std::vector<bool> mask(n, false);
        std::fill(mask.begin(), mask.begin() + static_cast<long>(k), true);
        do {
            std::vector<std::size_t> subset;
            for (std::size_t i = 0; i < n; ++i)
                if (mask[i]) subset.push_back(i);
            std::vector<int> inter = assertions[subset[0]].support;
            for (std::size_t j = 1; j < subset.size() && !inter.empty(); ++j)
                inter = intersect_sorted(inter, assertions[subset[j]].support);
            if (inter.empty())
                return ParadoxCertificate{std::move(assertions), std::move(subset)};
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    return std::nullopt;  // unreachable: full intersection was empty
}

std::optional<ParadoxCertificate> detect_paradox(const std::vector<cplx>& wv) {
    return certify_paradox(find_certainties(wv));
}

std::vector<cplx> to_complex(const ExactWeakVector& wv) {
    std::vector<cplx> out;
    out.reserve(wv.size());
    for (const auto& x : wv) out.push_back(x.value());
    return out;
}

}  // namespace weakreal
