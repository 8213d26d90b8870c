#pragma once

#include "wrindep/mseries.hpp"
#include "wrindep/series.hpp"

#include <optional>
#include <vector>

namespace wrindep {

enum class ReductionStatus { DistinctOrders, DependenceFound, PrecisionExhausted };

std::string to_string(ReductionStatus status);

/// One recorded elementary column operation on [g_1 ... g_n].
struct ElementaryOp {
    enum class Kind { AddScaledColumn, SwapColumns, ScaleColumn };
    Kind kind = Kind::AddScaledColumn;
    int target = 0;
    int source = 0;     // AddScaledColumn only
    FieldElement scale; // AddScaledColumn / ScaleColumn
};

/// Outcome of column-echelon elimination on a series family.
///
/// The transform satisfies [g_1 ... g_n] = [f_1 ... f_n] * A exactly, with
/// A[i][k] the weight of f_i inside g_k. A is a product of elementary
/// matrices, so det(A) is the running product of the recorded operations'
/// determinants.
template <class S>
struct ReductionResultT {
    std::vector<S> g;
    std::vector<std::vector<FieldElement>> transform;
    std::vector<ElementaryOp> ops;
    ReductionStatus status = ReductionStatus::DistinctOrders;
    std::optional<std::vector<FieldElement>> dependence;

    FieldElement det_from_ops(const FieldSpec& spec) const {
        FieldElement det = FieldElement::one(spec);
        for (const auto& op : ops) {
            switch (op.kind) {
            case ElementaryOp::Kind::AddScaledColumn:
                break;
            case ElementaryOp::Kind::SwapColumns:
                det = -det;
                break;
            case ElementaryOp::Kind::ScaleColumn:
                det *= op.scale;
                break;
            }
        }
        return det;
    }
};

using ReductionResult = ReductionResultT<Series>;
using MReductionResult = ReductionResultT<MSeries>;

/// Gaussian elimination by column operations until the orders are mutually
/// distinct, a column cancels to (known) zero, or no information is left.
ReductionResult reduce_to_distinct_orders(const std::vector<Series>& family);

/// Same discipline with the lexicographic order on leading exponents.
MReductionResult reduce_to_distinct_leading_exponents(const std::vector<MSeries>& family);

/// Recomputes [f] * A column by column.
std::vector<Series> apply_transform(const std::vector<Series>& family,
                                    const std::vector<std::vector<FieldElement>>& transform);
std::vector<MSeries> apply_transform(const std::vector<MSeries>& family,
                                     const std::vector<std::vector<FieldElement>>& transform);

/// Checks W(g_1,...,g_n) = W(f_1,...,f_n) * det(A) coefficientwise on the
/// common precision window.
bool verify_wronskian_transfer(const std::vector<Series>& family, const ReductionResult& result);

} // namespace wrindep
