#include "ainfty/f2.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ainfty {

void F2Matrix::add_entry(int r, int c) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
        throw std::out_of_range("F2Matrix::add_entry: index out of bounds");
    auto& v = col[static_cast<size_t>(c)];
    auto it = std::lower_bound(v.begin(), v.end(), r);
    if (it != v.end() && *it == r)
        v.erase(it);
    else
        v.insert(it, r);
}

bool F2Matrix::at(int r, int c) const {
    const auto& v = col[static_cast<size_t>(c)];
    return std::binary_search(v.begin(), v.end(), r);
}

bool F2Matrix::is_zero() const {
    for (const auto& v : col)
        if (!v.empty())
            return false;
    return true;
}

F2Matrix F2Matrix::transposed() const {
    F2Matrix t(cols, rows);
    for (int j = 0; j < cols; ++j)
        for (int r : col[static_cast<size_t>(j)])
            t.col[static_cast<size_t>(r)].push_back(j);
    // rows were visited in increasing j, columns of t already sorted
    return t;
}

F2Matrix F2Matrix::mul(const F2Matrix& rhs) const {
    if (cols != rhs.rows)
        throw std::invalid_argument("F2Matrix::mul: shape mismatch");
    F2Matrix out(rows, rhs.cols);
    for (int j = 0; j < rhs.cols; ++j) {
        std::vector<int> acc;
        for (int k : rhs.col[static_cast<size_t>(j)])
            acc = xor_rows(acc, col[static_cast<size_t>(k)]);
        out.col[static_cast<size_t>(j)] = std::move(acc);
    }
    return out;
}

std::string F2Matrix::str() const {
    std::ostringstream os;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c)
            os << (at(r, c) ? '1' : '.');
        os << '\n';
    }
    return os.str();
}

std::vector<int> xor_rows(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            out.push_back(a[i++]);
        else if (b[j] < a[i])
            out.push_back(b[j++]);
        else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + static_cast<long>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<long>(j), b.end());
    return out;
}

namespace {

/* Shared elimination core. Columns are reduced in order against the pivots
 * found so far; a column's pivot is its smallest remaining row index. When
 * `track` is set, combo[j] records which original columns were xored into
 * column j, which yields the kernel. */
struct Elim {
    std::vector<std::vector<int>> work;           // reduced columns
    std::vector<int> pivot_owner;                 // row -> column owning that pivot, or -1
    std::vector<std::vector<int>> combo;          // combination tracking (optional)
    int rank = 0;

    void run(const F2Matrix& m, bool track) {
        work.resize(static_cast<size_t>(m.cols));
        pivot_owner.assign(static_cast<size_t>(m.rows), -1);
        if (track)
            combo.resize(static_cast<size_t>(m.cols));
        for (int j = 0; j < m.cols; ++j) {
            auto cur = m.col[static_cast<size_t>(j)];
            std::vector<int> cmb = {j};
            while (!cur.empty()) {
                int top = cur.front();
                int owner = pivot_owner[static_cast<size_t>(top)];
                if (owner < 0)
                    break;
                cur = xor_rows(cur, work[static_cast<size_t>(owner)]);
                if (track)
                    cmb = xor_rows(cmb, combo[static_cast<size_t>(owner)]);
            }
            if (!cur.empty()) {
                pivot_owner[static_cast<size_t>(cur.front())] = j;
                ++rank;
            }
            work[static_cast<size_t>(j)] = std::move(cur);
            if (track)
                combo[static_cast<size_t>(j)] = std::move(cmb);
        }
    }
};

} // namespace

RrefResult rref_rank(const F2Matrix& m) {
    Elim e;
    e.run(m, true);
    RrefResult res;
    res.rank = e.rank;
    for (int j = 0; j < m.cols; ++j) {
        if (e.work[static_cast<size_t>(j)].empty())
            res.kernel.push_back(e.combo[static_cast<size_t>(j)]);
        else
            res.image.push_back(e.work[static_cast<size_t>(j)]);
    }
    return res;
}

int f2_rank(const F2Matrix& m) {
    Elim e;
    e.run(m, false);
    return e.rank;
}

} // namespace ainfty
