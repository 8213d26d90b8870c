#include "wrindep/reduction.hpp"

#include "wrindep/wronskian.hpp"

#include <algorithm>
#include <map>

namespace wrindep {

std::string to_string(ReductionStatus status) {
    switch (status) {
    case ReductionStatus::DistinctOrders: return "DistinctOrders";
    case ReductionStatus::DependenceFound: return "DependenceFound";
    case ReductionStatus::PrecisionExhausted: return "PrecisionExhausted";
    }
    return "?";
}

namespace {

// Order key and leading coefficient, uniform over Series/MSeries.
struct SeriesAdapter {
    using Key = std::int64_t;
    static std::optional<Key> key(const Series& s) { return s.order(); }
    static FieldElement lead(const Series& s) { return s.leading_monomial().coeff; }
    static Series uniformize(const Series& s, std::optional<std::int64_t> prec) {
        return prec ? s.truncated(*prec) : s;
    }
    static std::optional<std::int64_t> precision(const Series& s) { return s.precision(); }
};

struct MSeriesAdapter {
    using Key = MultiIndex;
    static std::optional<Key> key(const MSeries& s) {
        if (s.is_zero_up_to_precision()) return std::nullopt;
        return s.leading_monomial().exponent;
    }
    static FieldElement lead(const MSeries& s) { return s.leading_monomial().coeff; }
    static MSeries uniformize(const MSeries& s, std::optional<std::int64_t> prec) {
        return prec ? s.truncated(*prec) : s;
    }
    static std::optional<std::int64_t> precision(const MSeries& s) { return s.precision(); }
};

template <class Adapter, class S>
ReductionResultT<S> reduce_impl(const std::vector<S>& family) {
    const std::size_t n = family.size();
    if (n == 0) throw Error("empty family");
    const FieldSpec spec = family.front().spec();
    for (const auto& f : family) {
        if (f.spec() != spec) throw SpecMismatchError("family members live over different fields");
    }

    // pessimistic uniform window: everyone is cut down to the weakest precision
    std::optional<std::int64_t> common;
    for (const auto& f : family) {
        auto p = Adapter::precision(f);
        if (p && (!common || *p < *common)) common = p;
    }

    ReductionResultT<S> res;
    res.g.reserve(n);
    for (const auto& f : family) res.g.push_back(Adapter::uniformize(f, common));
    res.transform.assign(n, std::vector<FieldElement>(n, FieldElement::zero(spec)));
    for (std::size_t i = 0; i < n; ++i) res.transform[i][i] = FieldElement::one(spec);

    // If cutting a member down to the common window hides its known leading
    // term, no verdict over that window can be trusted.
    if (common) {
        for (std::size_t k = 0; k < n; ++k) {
            if (res.g[k].is_zero_up_to_precision() && !family[k].is_zero_up_to_precision() &&
                !family[k].is_zero()) {
                res.status = ReductionStatus::PrecisionExhausted;
                return res;
            }
        }
    }

    auto dependence_at = [&](std::size_t k) {
        std::vector<FieldElement> c;
        c.reserve(n);
        for (std::size_t i = 0; i < n; ++i) c.push_back(res.transform[i][k]);
        res.status = ReductionStatus::DependenceFound;
        res.dependence = std::move(c);
    };

    // Each pass either finishes, kills a column, or strictly increases one
    // column's order, which is bounded by the window/supports, so this
    // terminates; the counter is a hard backstop.
    std::size_t guard = 0;
    const std::size_t guard_limit = 1000000;
    while (true) {
        if (++guard > guard_limit) throw Error("internal: column echelon loop did not terminate");
        // a column with no known nonzero coefficient ends the game
        for (std::size_t k = 0; k < n; ++k) {
            if (res.g[k].is_zero_up_to_precision()) {
                dependence_at(k);
                return res;
            }
        }
        // group columns by their current order key
        std::map<typename Adapter::Key, std::vector<std::size_t>> groups;
        for (std::size_t k = 0; k < n; ++k) {
            groups[*Adapter::key(res.g[k])].push_back(k);
        }
        const auto clash = std::find_if(groups.begin(), groups.end(),
                                        [](const auto& kv) { return kv.second.size() > 1; });
        if (clash == groups.end()) {
            res.status = ReductionStatus::DistinctOrders;
            return res;
        }
        const std::size_t pivot = clash->second.front();
        const FieldElement pivot_lead = Adapter::lead(res.g[pivot]);
        for (std::size_t idx = 1; idx < clash->second.size(); ++idx) {
            const std::size_t k = clash->second[idx];
            const FieldElement factor = Adapter::lead(res.g[k]) / pivot_lead;
            res.g[k] = res.g[k] - res.g[pivot].scaled(factor);
            for (std::size_t i = 0; i < n; ++i) {
                res.transform[i][k] -= factor * res.transform[i][pivot];
            }
            res.ops.push_back(ElementaryOp{ElementaryOp::Kind::AddScaledColumn,
                                           static_cast<int>(k), static_cast<int>(pivot), -factor});
        }
    }
}

} // namespace

ReductionResult reduce_to_distinct_orders(const std::vector<Series>& family) {
    return reduce_impl<SeriesAdapter>(family);
}

MReductionResult reduce_to_distinct_leading_exponents(const std::vector<MSeries>& family) {
    return reduce_impl<MSeriesAdapter>(family);
}

namespace {

template <class S>
std::vector<S> apply_transform_impl(const std::vector<S>& family,
                                    const std::vector<std::vector<FieldElement>>& transform) {
    const std::size_t n = family.size();
    if (transform.size() != n) throw Error("transform size differs from family size");
    std::vector<S> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<FieldElement> column;
        column.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (transform[i].size() != n) throw Error("transform is not square");
            column.push_back(transform[i][k]);
        }
        if constexpr (std::is_same_v<S, Series>) {
            out.push_back(series_linear_combine(family, column));
        } else {
            out.push_back(mseries_linear_combine(family, column));
        }
    }
    return out;
}

} // namespace

std::vector<Series> apply_transform(const std::vector<Series>& family,
                                    const std::vector<std::vector<FieldElement>>& transform) {
    return apply_transform_impl(family, transform);
}

std::vector<MSeries> apply_transform(const std::vector<MSeries>& family,
                                     const std::vector<std::vector<FieldElement>>& transform) {
    return apply_transform_impl(family, transform);
}

bool verify_wronskian_transfer(const std::vector<Series>& family, const ReductionResult& result) {
    if (result.status != ReductionStatus::DistinctOrders) {
        throw Error("Wronskian transfer is checked on DistinctOrders results only");
    }
    if (family.empty() || family.size() != result.g.size()) {
        throw Error("family does not match the reduction result");
    }
    const FieldSpec spec = family.front().spec();
    const Series wg = wronskian(result.g);
    const Series wf = wronskian(family);
    return equal_on_common_window(wg, wf.scaled(result.det_from_ops(spec)));
}

} // namespace wrindep
