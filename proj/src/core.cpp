#include "orthojoin/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace orthojoin {

SizeTuple::SizeTuple(std::vector<int> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw std::invalid_argument("size tuple needs at least one component");
    }
    for (int e : entries_) {
        if (e < 1) {
            throw std::invalid_argument("size tuple entries must be positive, got " + std::to_string(e));
        }
        total_ += e;
        if (e == 1) ++iso_;
    }
}

SizeTuple SizeTuple::parse(std::string_view text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string_view token = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.remove_prefix(1);
        while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.remove_suffix(1);
        int value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
            throw std::invalid_argument("cannot parse size tuple '" + std::string(text) + "'");
        }
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return SizeTuple(std::move(out));
}

SizeTuple SizeTuple::canonical() const {
    std::vector<int> sorted = entries_;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    return SizeTuple(std::move(sorted));
}

std::string SizeTuple::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(entries_[i]);
    }
    return s;
}

IntMatrix::IntMatrix(int rows, int cols, int fill) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) {
            throw std::invalid_argument("ragged rows in integer matrix");
        }
        for (int j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
}

int IntMatrix::row_sum(int r) const {
    int s = 0;
    for (int c = 0; c < cols_; ++c) s += (*this)(r, c);
    return s;
}

int IntMatrix::col_sum(int c) const {
    int s = 0;
    for (int r = 0; r < rows_; ++r) s += (*this)(r, c);
    return s;
}

int IntMatrix::total() const { return std::accumulate(data_.begin(), data_.end(), 0); }

std::vector<int> IntMatrix::row_sums() const {
    std::vector<int> sums(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) sums[static_cast<std::size_t>(r)] = row_sum(r);
    return sums;
}

std::vector<std::vector<int>> IntMatrix::to_rows() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(rows_), std::vector<int>(static_cast<std::size_t>(cols_)));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = (*this)(r, c);
    return out;
}

IntMatrix middle(const IntMatrix& v) {
    if (v.rows() < 3) {
        throw std::invalid_argument("middle() needs at least 3 rows, got " + std::to_string(v.rows()));
    }
    IntMatrix out(v.rows() - 2, v.cols());
    for (int r = 1; r + 1 < v.rows(); ++r)
        for (int c = 0; c < v.cols(); ++c) out(r - 1, c) = v(r, c);
    return out;
}

MultiplicityMatrix::MultiplicityMatrix(IntMatrix data) : data_(std::move(data)) {
    if (data_.rows() < 3) throw std::invalid_argument("multiplicity matrix needs at least 3 rows");
    if (data_.cols() < 1) throw std::invalid_argument("multiplicity matrix needs at least 1 column");
    for (int c = 0; c < data_.cols(); ++c) {
        bool nonzero = false;
        for (int r = 0; r < data_.rows(); ++r) {
            if (data_(r, c) < 0) throw std::invalid_argument("multiplicity matrix entries must be nonnegative");
            nonzero = nonzero || data_(r, c) > 0;
        }
        if (!nonzero) throw std::invalid_argument("multiplicity matrix column " + std::to_string(c) + " is zero");
    }
}

std::vector<int> MultiplicityMatrix::column(int c) const {
    std::vector<int> col(static_cast<std::size_t>(rows()));
    for (int r = 0; r < rows(); ++r) col[static_cast<std::size_t>(r)] = data_(r, c);
    return col;
}

int MultiplicityMatrix::middle_mass() const {
    int s = 0;
    for (int r = 1; r + 1 < rows(); ++r) s += data_.row_sum(r);
    return s;
}

EigenvalueList::EigenvalueList(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("eigenvalue list is empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) throw std::invalid_argument("eigenvalue list has a non-finite value");
        if (i > 0 && !(values_[i - 1] < values_[i])) {
            throw std::invalid_argument("eigenvalue list must be strictly increasing");
        }
    }
}

EigenvalueList EigenvalueList::default_for_rows(int rows, double guard) {
    if (rows < 3) throw std::invalid_argument("realization eigenvalue list needs at least 3 values");
    if (!(guard > 0.0 && guard < 1.0)) throw std::invalid_argument("guard must lie in (0, 1)");
    std::vector<double> values(static_cast<std::size_t>(rows));
    values.front() = -1.0;
    values.back() = 1.0;
    for (int s = 1; s + 1 < rows; ++s) {
        values[static_cast<std::size_t>(s)] = (-1.0 + 2.0 * s / (rows - 1)) * (1.0 - guard);
    }
    return EigenvalueList(std::move(values));
}

EigenvalueList EigenvalueList::with_interior(const std::vector<double>& interior) {
    std::vector<double> values;
    values.reserve(interior.size() + 2);
    values.push_back(-1.0);
    values.insert(values.end(), interior.begin(), interior.end());
    values.push_back(1.0);
    EigenvalueList list(std::move(values));
    if (!list.is_realization_list()) throw std::invalid_argument("interior eigenvalues must lie in (-1, 1)");
    return list;
}

bool EigenvalueList::is_realization_list() const {
    if (values_.size() < 3 || values_.front() != -1.0 || values_.back() != 1.0) return false;
    return std::all_of(values_.begin() + 1, values_.end() - 1, [](double x) { return x > -1.0 && x < 1.0; });
}

DenseSymMatrix DenseSymMatrix::from_matrix(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("symmetric matrix must be square");
    const double defect = m.size() == 0 ? 0.0 : (m - m.transpose()).cwiseAbs().maxCoeff();
    if (defect > tol) {
        throw std::invalid_argument("matrix is not symmetric (defect " + std::to_string(defect) + ")");
    }
    DenseSymMatrix out;
    out.m_ = m.triangularView<Eigen::Upper>();
    out.m_.triangularView<Eigen::StrictlyLower>() = out.m_.transpose();
    return out;
}

std::string_view rule_name(Rule rule) {
    switch (rule) {
        case Rule::g1: return "g1";
        case Rule::g2: return "g2";
        case Rule::g3: return "g3";
        case Rule::none: return "none";
    }
    return "none";
}

void to_json(nlohmann::json& j, const SizeTuple& m) {
    j = std::vector<int>(m.entries().begin(), m.entries().end());
}

void to_json(nlohmann::json& j, const IntMatrix& m) {
    j = nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.to_rows()}};
}

void to_json(nlohmann::json& j, const MultiplicityMatrix& m) { to_json(j, m.data()); }

MultiplicityMatrix multiplicity_matrix_from_json(const nlohmann::json& j) {
    auto rows = j.at("data").get<std::vector<std::vector<int>>>();
    IntMatrix data = IntMatrix::from_rows(rows);
    if (data.rows() != j.at("rows").get<int>() || data.cols() != j.at("cols").get<int>()) {
        throw std::invalid_argument("multiplicity matrix JSON: rows/cols disagree with data");
    }
    return MultiplicityMatrix(std::move(data));
}

void to_json(nlohmann::json& j, const DecisionReport& report) {
    j = nlohmann::json{
        {"m", report.m},
        {"n", report.n},
        {"q", report.q},
        {"rule", std::string(rule_name(report.rule))},
        {"swapped", report.swapped},
    };
    if (report.witness) {
        j["witness"] = {{"V", report.witness->v}, {"W", report.witness->w}};
        j["branch"] = report.witness->branch;
    } else {
        j["witness"] = nullptr;
        j["branch"] = nullptr;
    }
    j["mu"] = report.mu ? nlohmann::json(*report.mu) : nlohmann::json(nullptr);
    j["iplus_range"] = report.iplus_range
                           ? nlohmann::json::array({report.iplus_range->first, report.iplus_range->second})
                           : nlohmann::json(nullptr);
    // q = 3 for the clique join also bounds q from below for any graphs with
    // connected components of the same orders.
    j["connected_components_q_at_least_3"] = report.q == 3;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& x) {
    if (x.rows() != x.cols()) throw std::invalid_argument("matrix JSON encoding expects a square matrix");
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index k = 0; k < x.cols(); ++k) data.push_back(x(i, k));
    return nlohmann::json{{"n", x.rows()}, {"data", data}};
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    if (n < 0) throw std::invalid_argument("matrix JSON: negative dimension");
    const auto& data = j.at("data");
    if (!data.is_array()) throw std::invalid_argument("matrix JSON: data must be an array");
    Eigen::MatrixXd x(n, n);
    if (!data.empty() && data.front().is_array()) {
        if (static_cast<int>(data.size()) != n) throw std::invalid_argument("matrix JSON: wrong number of rows");
        for (int i = 0; i < n; ++i) {
            const auto& row = data[static_cast<std::size_t>(i)];
            if (static_cast<int>(row.size()) != n) throw std::invalid_argument("matrix JSON: ragged row");
            for (int k = 0; k < n; ++k) x(i, k) = row[static_cast<std::size_t>(k)].get<double>();
        }
    } else {
        if (static_cast<long>(data.size()) != static_cast<long>(n) * n) {
            throw std::invalid_argument("matrix JSON: expected n*n entries");
        }
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) x(i, k) = data[static_cast<std::size_t>(i * n + k)].get<double>();
    }
    return x;
}

std::string matrix_to_text(const Eigen::MatrixXd& x, int precision) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision);
    const int width = precision + 4;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index k = 0; k < x.cols(); ++k) {
            if (k) os << ' ';
            os << std::setw(width) << x(i, k);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace orthojoin
