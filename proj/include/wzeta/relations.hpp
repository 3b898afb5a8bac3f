#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <vector>

#include "wzeta/congruence.hpp"
#include "wzeta/maps.hpp"

namespace wzeta {

inline constexpr int kDefaultMaxTruncation = 12;

struct RowLabel {
    Composition s1;
    Composition s2;
    int family = 1;  // 1 = reversal, 2 = duality

    std::string str() const;  // "s1|s2|i" with dash-joined parts
    bool operator==(const RowLabel&) const = default;
};

// One matrix row, sparse: (column index, coefficient) sorted by column.
using SparseRow = std::vector<std::pair<size_t, Rational>>;

// The relation matrix at a truncation: one row per (s1, s2, family) with
// w(s1)+w(s2) < n and s2 nonempty, holding the coefficients of
// z_{s1} * f_family(z_{s2}) in the basis of nonempty compositions of weight
// below n. Every row is a weighted congruence mod p^n.
class RelationMatrix {
public:
    static RelationMatrix build(int truncation, int max_truncation = kDefaultMaxTruncation);

    // For deserialization and tests; validates shapes.
    RelationMatrix(int truncation, std::vector<Composition> columns, std::vector<RowLabel> labels,
                   std::vector<SparseRow> rows);

    int truncation() const { return truncation_; }
    const std::vector<Composition>& columns() const { return columns_; }
    const std::vector<RowLabel>& labels() const { return labels_; }
    const std::vector<SparseRow>& rows() const { return rows_; }

    Rational entry(size_t row, size_t col) const;
    CongruenceStatement row_statement(size_t row) const;

    // CSV: header "s1|s2|i,<col>,..."; compositions dash-joined ("4-1-1").
    void write_csv(std::ostream& os) const;

private:
    int truncation_;
    std::vector<Composition> columns_;
    std::vector<RowLabel> labels_;
    std::vector<SparseRow> rows_;
};

// Exact reduced row echelon form of a RelationMatrix with pivot bookkeeping.
// Non-pivot columns are the essential compositions; reduce() rewrites any
// element as an equivalent combination supported on them.
class ReducedBasis {
public:
    static ReducedBasis reduce(const RelationMatrix& m);

    int truncation() const { return truncation_; }
    const std::vector<Composition>& columns() const { return columns_; }
    // RREF rows, sorted by pivot column; rref_rows()[i][j] indexes columns().
    const std::vector<std::vector<Rational>>& rref_rows() const { return rref_; }
    const std::vector<size_t>& pivot_columns() const { return pivots_; }
    const std::vector<Composition>& essential_columns() const { return essentials_; }
    size_t rank() const { return rref_.size(); }

    bool is_pivot(const Composition& s) const;

    // phi(a): the unique element supported on essential columns (constant
    // term carried through unchanged) with a - phi(a) in the row span.
    TruncatedSeries reduce_element(const TruncatedSeries& a) const;

    // The weighted congruence a - phi(a) == 0 mod p^n.
    CongruenceStatement congruence_for(const TruncatedSeries& a) const;

    // Exact nullspace basis of the matrix of essential coordinates of
    // phi(elements[i]): each vector c gives sum_i c_i elements[i] == 0 mod p^n.
    // Vectors are integer-normalized (content 1, first nonzero entry positive).
    std::vector<std::vector<Rational>> discover(const std::vector<TruncatedSeries>& elements) const;

    void save(const std::filesystem::path& path) const;
    static ReducedBasis load(const std::filesystem::path& path);

    bool operator==(const ReducedBasis&) const = default;

private:
    ReducedBasis() = default;
    void rebuild_column_index();
    void validate() const;

    int truncation_ = 0;
    std::vector<Composition> columns_;
    std::vector<std::vector<Rational>> rref_;
    std::vector<size_t> pivots_;
    std::vector<Composition> essentials_;
    std::map<Composition, size_t, GradedLess> column_index_;
};

// Exact RREF in place; returns the pivot column indices in increasing order.
// Exposed for reuse on small dense systems (nullspace computations, tests).
std::vector<size_t> row_reduce(std::vector<std::vector<Rational>>& rows);

}  // namespace wzeta
