#ifndef AINFTY_F2_HPP
#define AINFTY_F2_HPP

#include <vector>
#include <cstdint>
#include <string>

namespace ainfty {

/* Sparse matrix over F2, column major: col[j] is the sorted list of rows
 * where column j is 1. Entries are immutable after construction apart from
 * add_entry during assembly. */
struct F2Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<int>> col;

    F2Matrix() = default;
    F2Matrix(int r, int c) : rows(r), cols(c), col(static_cast<size_t>(c)) {}

    // xor entry (r,c) into the matrix; keeps columns sorted and duplicate free
    void add_entry(int r, int c);
    bool at(int r, int c) const;
    bool is_zero() const;

    F2Matrix transposed() const;
    // this * rhs (composition of linear maps acting on column vectors:
    // (this*rhs)(v) = this(rhs(v)), so cols(this) == rows(rhs))
    F2Matrix mul(const F2Matrix& rhs) const;

    // column j as sorted row indices
    const std::vector<int>& column(int j) const { return col[static_cast<size_t>(j)]; }

    bool operator==(const F2Matrix& o) const { return rows == o.rows && cols == o.cols && col == o.col; }

    std::string str() const;
};

// xor-merge of two sorted index vectors (symmetric difference)
std::vector<int> xor_rows(const std::vector<int>& a, const std::vector<int>& b);

struct RrefResult {
    int rank = 0;
    // basis of ker(m) as columns (each a sorted list of indices < cols)
    std::vector<std::vector<int>> kernel;
    // basis of the column space, as columns of the original matrix reduced
    std::vector<std::vector<int>> image;
};

/* Gaussian elimination over F2 with deterministic pivoting: columns are
 * processed left to right, the pivot of a column is its topmost remaining
 * row. Output depends only on the input matrix. */
RrefResult rref_rank(const F2Matrix& m);

// rank only, no kernel/image bookkeeping
int f2_rank(const F2Matrix& m);

} // namespace ainfty

#endif
