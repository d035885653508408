#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

namespace orthojoin {

/// Orders of the complete components of a union of cliques, in caller order.
///
/// A tuple (m_1, ..., m_k) stands for the graph K_{m_1} u ... u K_{m_k}.
/// Entries are positive and there is at least one component.
class SizeTuple {
public:
    SizeTuple() = delete;
    explicit SizeTuple(std::vector<int> entries);
    SizeTuple(std::initializer_list<int> entries) : SizeTuple(std::vector<int>(entries)) {}

    /// Parses a comma-separated list such as "2,2,1". Whitespace around
    /// entries is ignored. Throws std::invalid_argument on malformed input.
    static SizeTuple parse(std::string_view text);

    std::span<const int> entries() const { return entries_; }
    int length() const { return static_cast<int>(entries_.size()); }
    int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }

    /// |m|, the number of vertices.
    int total() const { return total_; }
    /// iota(m), the number of isolated vertices (entries equal to 1).
    int iso() const { return iso_; }

    /// Entries sorted in descending order. Decisions are invariant under
    /// permutation, so this is the key used for caching.
    SizeTuple canonical() const;

    std::string to_string() const;

    friend bool operator==(const SizeTuple&, const SizeTuple&) = default;
    friend auto operator<=>(const SizeTuple& a, const SizeTuple& b) { return a.entries_ <=> b.entries_; }

private:
    std::vector<int> entries_;
    int total_ = 0;
    int iso_ = 0;
};

/// Dense row-major integer matrix without further invariants.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols, int fill = 0);
    /// Builds from a list of rows; all rows must have equal length.
    static IntMatrix from_rows(const std::vector<std::vector<int>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int& operator()(int r, int c) { return data_[index(r, c)]; }
    int operator()(int r, int c) const { return data_[index(r, c)]; }

    int row_sum(int r) const;
    int col_sum(int c) const;
    int total() const;
    std::vector<int> row_sums() const;
    std::vector<std::vector<int>> to_rows() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c); }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> data_;
};

/// Rows 2..r-1 of a matrix with at least three rows.
IntMatrix middle(const IntMatrix& v);

/// r x k nonnegative integer matrix whose columns are ordered multiplicity
/// lists, one column per connected component. Row s counts the eigenvalue
/// lambda_s; the first and last rows correspond to -1 and +1.
///
/// Invariants: r >= 3, k >= 1, entries >= 0, every column has a nonzero entry.
class MultiplicityMatrix {
public:
    explicit MultiplicityMatrix(IntMatrix data);
    static MultiplicityMatrix from_rows(const std::vector<std::vector<int>>& rows) {
        return MultiplicityMatrix(IntMatrix::from_rows(rows));
    }

    int rows() const { return data_.rows(); }
    int cols() const { return data_.cols(); }
    int operator()(int r, int c) const { return data_(r, c); }
    const IntMatrix& data() const { return data_; }
    std::vector<int> column(int c) const;

    /// The matrix with first and last rows removed.
    IntMatrix middle() const { return orthojoin::middle(data_); }
    /// Sum of all middle entries: total multiplicity of the interior eigenvalues.
    int middle_mass() const;

    friend bool operator==(const MultiplicityMatrix&, const MultiplicityMatrix&) = default;

private:
    IntMatrix data_;
};

/// Strictly increasing list of eigenvalues.
class EigenvalueList {
public:
    explicit EigenvalueList(std::vector<double> values);

    /// (-1, lambda_2, ..., lambda_{r-1}, 1) with the interior values evenly
    /// spaced and shrunk by (1 - guard) so they stay inside (-1, 1).
    static EigenvalueList default_for_rows(int rows, double guard = 1e-3);
    /// (-1, interior..., 1).
    static EigenvalueList with_interior(const std::vector<double>& interior);

    std::span<const double> values() const { return values_; }
    int length() const { return static_cast<int>(values_.size()); }
    double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

    /// True when first == -1, last == +1 and every interior value is in (-1, 1).
    bool is_realization_list() const;

private:
    std::vector<double> values_;
};

/// Square real symmetric matrix. The lower triangle is a mirror of the
/// upper triangle, so X(i,j) == X(j,i) holds exactly.
class DenseSymMatrix {
public:
    DenseSymMatrix() = default;
    explicit DenseSymMatrix(int n) : m_(Eigen::MatrixXd::Zero(n, n)) {}

    /// Accepts a square matrix whose asymmetry is at most `tol` (max-norm)
    /// and mirrors its upper triangle. Throws std::invalid_argument otherwise.
    static DenseSymMatrix from_matrix(const Eigen::MatrixXd& m, double tol = 1e-12);

    int dim() const { return static_cast<int>(m_.rows()); }
    double operator()(int i, int j) const { return m_(i, j); }
    void set(int i, int j, double value) {
        m_(i, j) = value;
        m_(j, i) = value;
    }
    const Eigen::MatrixXd& matrix() const { return m_; }

private:
    Eigen::MatrixXd m_;
};

/// Which clause of the closed-form characterisation fired.
enum class Rule { g1, g2, g3, none };

std::string_view rule_name(Rule rule);

/// Pair of compatible multiplicity matrices (V for the first graph, W for the
/// second) plus the name of the construction that produced it.
struct Witness {
    MultiplicityMatrix v;
    MultiplicityMatrix w;
    std::string branch;
};

/// Outcome of deciding q for a join of two unions of cliques.
///
/// q == 2 exactly when witness, mu and iplus_range are present.
struct DecisionReport {
    SizeTuple m;
    SizeTuple n;
    int q = 3;
    Rule rule = Rule::none;
    /// Inputs were exchanged internally to get k <= l. Witness matrices are
    /// always reported in the caller's orientation.
    bool swapped = false;
    std::optional<Witness> witness;
    std::optional<int> mu;
    std::optional<std::pair<int, int>> iplus_range;
};

// JSON encodings.
void to_json(nlohmann::json& j, const SizeTuple& m);
void to_json(nlohmann::json& j, const IntMatrix& m);
void to_json(nlohmann::json& j, const MultiplicityMatrix& m);
MultiplicityMatrix multiplicity_matrix_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const DecisionReport& report);

/// {"n": dim, "data": [row-major entries]}.
nlohmann::json matrix_to_json(const Eigen::MatrixXd& x);
/// Reads {"n", "data"} where data is either flat row-major or a list of rows.
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);
/// Aligned columns, one matrix row per line.
std::string matrix_to_text(const Eigen::MatrixXd& x, int precision = 6);

}  // namespace orthojoin

namespace nlohmann {
template <>
struct adl_serializer<orthojoin::SizeTuple> {
    static orthojoin::SizeTuple from_json(const json& j) { return orthojoin::SizeTuple(j.get<std::vector<int>>()); }
    static void to_json(json& j, const orthojoin::SizeTuple& m) { orthojoin::to_json(j, m); }
};
}  // namespace nlohmann
