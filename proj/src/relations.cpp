#include "wzeta/relations.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace wzeta {

// ---- CongruenceStatement ---------------------------------------------------

CongruenceStatement::CongruenceStatement(int modulus_exponent)
    : modulus_exponent_(modulus_exponent) {
    if (modulus_exponent < 1) throw std::invalid_argument("modulus exponent must be >= 1");
}

CongruenceStatement::CongruenceStatement(int modulus_exponent, TermMap terms)
    : CongruenceStatement(modulus_exponent) {
    for (auto& [s, c] : terms) add_term(s, c);
}

void CongruenceStatement::add_term(const Composition& s, const Rational& c) {
    if (c == 0) return;
    if (s.empty())
        throw std::invalid_argument("a weighted congruence cannot carry a constant term");
    if (s.weight() >= modulus_exponent_)
        throw std::invalid_argument("congruence term weight must be below the modulus exponent");
    auto [it, inserted] = terms_.emplace(s, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int CongruenceStatement::min_weight() const {
    return terms_.empty() ? 0 : terms_.begin()->first.weight();
}

namespace {

std::string congruence_text(const CongruenceStatement::TermMap& terms, int exponent, int shift) {
    if (terms.empty()) return "0 == 0 (mod p^" + std::to_string(exponent - shift) + ")";
    std::string out;
    bool first = true;
    for (const auto& [s, c] : terms) {
        Rational a = abs(c);
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += (c < 0) ? " - " : " + ";
        }
        if (a != 1) {
            out += rational_to_string(a);
            out += ' ';
        }
        int power = s.weight() - shift;
        if (power == 1) {
            out += "p ";
        } else if (power > 1) {
            out += "p^" + std::to_string(power) + " ";
        }
        out += "H(";
        const auto& parts = s.parts();
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(parts[i]);
        }
        out += ")";
    }
    out += " == 0 (mod p^" + std::to_string(exponent - shift) + ")";
    return out;
}

}  // namespace

std::string CongruenceStatement::normalized_text() const {
    return congruence_text(terms_, modulus_exponent_, 0);
}

std::string CongruenceStatement::display_text() const {
    return congruence_text(terms_, modulus_exponent_, min_weight());
}

nlohmann::json CongruenceStatement::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [s, c] : terms_)
        terms.push_back({{"composition", s.parts()}, {"coefficient", rational_to_string(c)}});
    return {{"truncation", modulus_exponent_},
            {"modulus_exponent", modulus_exponent_},
            {"terms", std::move(terms)},
            {"display", display_text()}};
}

CongruenceStatement CongruenceStatement::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("modulus_exponent") || !j.contains("terms"))
        throw std::invalid_argument("congruence JSON needs \"modulus_exponent\" and \"terms\"");
    int n = j.at("modulus_exponent").get<int>();
    if (j.contains("truncation") && j.at("truncation").get<int>() != n)
        throw std::invalid_argument("congruence JSON: truncation and modulus_exponent differ");
    CongruenceStatement out(n);
    for (const auto& t : j.at("terms")) {
        Composition s(t.at("composition").get<std::vector<int>>());
        out.add_term(s, rational_from_string(t.at("coefficient").get<std::string>()));
    }
    return out;
}

// ---- RelationMatrix --------------------------------------------------------

namespace {

std::string dash_joined(const Composition& c) {
    std::string out;
    for (size_t i = 0; i < c.parts().size(); ++i) {
        if (i) out += '-';
        out += std::to_string(c.parts()[i]);
    }
    return out;
}

std::vector<Composition> nonempty_columns(int truncation) {
    auto cols = compositions_below(truncation);
    cols.erase(cols.begin());  // drop the empty composition: its column is identically zero
    return cols;
}

}  // namespace

std::string RowLabel::str() const {
    return dash_joined(s1) + "|" + dash_joined(s2) + "|" + std::to_string(family);
}

RelationMatrix::RelationMatrix(int truncation, std::vector<Composition> columns,
                               std::vector<RowLabel> labels, std::vector<SparseRow> rows)
    : truncation_(truncation),
      columns_(std::move(columns)),
      labels_(std::move(labels)),
      rows_(std::move(rows)) {
    if (labels_.size() != rows_.size())
        throw std::invalid_argument("relation matrix: one label per row required");
    for (const auto& row : rows_) {
        size_t prev = 0;
        bool first = true;
        for (const auto& [col, c] : row) {
            if (col >= columns_.size() || c == 0 || (!first && col <= prev))
                throw std::invalid_argument("relation matrix: malformed sparse row");
            prev = col;
            first = false;
        }
    }
}

RelationMatrix RelationMatrix::build(int truncation, int max_truncation) {
    if (truncation < 2) throw std::invalid_argument("relation matrix needs truncation >= 2");
    if (truncation > max_truncation)
        throw std::invalid_argument("truncation " + std::to_string(truncation) +
                                    " exceeds the configured maximum " +
                                    std::to_string(max_truncation) +
                                    " (basis size doubles per degree)");

    auto columns = nonempty_columns(truncation);
    std::map<Composition, size_t, GradedLess> column_index;
    for (size_t i = 0; i < columns.size(); ++i) column_index.emplace(columns[i], i);

    auto all = compositions_below(truncation);
    std::vector<RowLabel> labels;
    std::vector<SparseRow> rows;

    // kernel elements f_i(z_{s2}) are shared across all s1
    std::array<std::map<Composition, TruncatedSeries, GradedLess>, 2> kernels;
    for (const auto& s2 : all) {
        if (s2.empty()) continue;  // f_i(1) = 0
        for (int family : {1, 2}) {
            kernels[family - 1].emplace(
                s2, kernel_element(family, TruncatedSeries::basis(s2, truncation)));
        }
    }

    for (const auto& s1 : all) {
        TruncatedSeries left = TruncatedSeries::basis(s1, truncation);
        for (const auto& s2 : all) {
            if (s2.empty() || s1.weight() + s2.weight() >= truncation) continue;
            for (int family : {1, 2}) {
                const TruncatedSeries& f = kernels[family - 1].at(s2);
                TruncatedSeries product = stuffle(left, f);
                SparseRow row;
                row.reserve(product.term_count());
                for (const auto& [s, c] : product.terms()) {
                    if (s.empty())
                        throw std::logic_error("relation row acquired a constant term");
                    row.emplace_back(column_index.at(s), c);
                }
                labels.push_back({s1, s2, family});
                rows.push_back(std::move(row));
            }
        }
    }
    return RelationMatrix(truncation, std::move(columns), std::move(labels), std::move(rows));
}

Rational RelationMatrix::entry(size_t row, size_t col) const {
    const auto& r = rows_.at(row);
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& e, size_t c) { return e.first < c; });
    return (it != r.end() && it->first == col) ? it->second : Rational(0);
}

CongruenceStatement RelationMatrix::row_statement(size_t row) const {
    CongruenceStatement out(truncation_);
    for (const auto& [col, c] : rows_.at(row)) out.add_term(columns_[col], c);
    return out;
}

void RelationMatrix::write_csv(std::ostream& os) const {
    os << "s1|s2|i";
    for (const auto& c : columns_) os << ',' << dash_joined(c);
    os << '\n';
    for (size_t i = 0; i < rows_.size(); ++i) {
        os << labels_[i].str();
        size_t next = 0;
        const auto& row = rows_[i];
        for (size_t col = 0; col < columns_.size(); ++col) {
            if (next < row.size() && row[next].first == col) {
                os << ',' << rational_to_string(row[next].second);
                ++next;
            } else {
                os << ",0";
            }
        }
        os << '\n';
    }
}

// ---- RREF -------------------------------------------------------------------

std::vector<size_t> row_reduce(std::vector<std::vector<Rational>>& rows) {
    std::vector<size_t> pivots;
    if (rows.empty()) return pivots;
    size_t ncols = rows[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        size_t sel = rank;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        Rational lead = rows[rank][col];
        for (size_t j = col; j < ncols; ++j) rows[rank][j] /= lead;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            Rational f = rows[i][col];
            for (size_t j = col; j < ncols; ++j)
                if (rows[rank][j] != 0) rows[i][j] -= f * rows[rank][j];
        }
        pivots.push_back(col);
        ++rank;
    }
    rows.resize(rank, std::vector<Rational>(ncols));
    return pivots;
}

// ---- ReducedBasis ------------------------------------------------------------

void ReducedBasis::rebuild_column_index() {
    column_index_.clear();
    for (size_t i = 0; i < columns_.size(); ++i) column_index_.emplace(columns_[i], i);
    essentials_.clear();
    std::set<size_t> pivot_set(pivots_.begin(), pivots_.end());
    for (size_t i = 0; i < columns_.size(); ++i)
        if (!pivot_set.contains(i)) essentials_.push_back(columns_[i]);
}

ReducedBasis ReducedBasis::reduce(const RelationMatrix& m) {
    const size_t ncols = m.columns().size();
    std::vector<std::vector<Rational>> echelon;
    std::map<size_t, size_t> pivot_to_row;

    // forward pass: insert each row, reducing against the pivots seen so far
    for (const auto& sparse : m.rows()) {
        std::vector<Rational> row(ncols, Rational(0));
        for (const auto& [col, c] : sparse) row[col] = c;
        for (const auto& [pc, ri] : pivot_to_row) {
            if (row[pc] == 0) continue;
            Rational f = std::move(row[pc]);
            row[pc] = 0;
            const auto& er = echelon[ri];
            for (size_t j = pc + 1; j < ncols; ++j)
                if (er[j] != 0) row[j] -= f * er[j];
        }
        size_t lead = 0;
        while (lead < ncols && row[lead] == 0) ++lead;
        if (lead == ncols) continue;  // dependent row
        Rational inv = row[lead];
        row[lead] = 1;
        for (size_t j = lead + 1; j < ncols; ++j)
            if (row[j] != 0) row[j] /= inv;
        pivot_to_row.emplace(lead, echelon.size());
        echelon.push_back(std::move(row));
    }

    // back substitution, highest pivot first, yields the canonical RREF
    for (auto it = pivot_to_row.rbegin(); it != pivot_to_row.rend(); ++it) {
        auto& row = echelon[it->second];
        for (const auto& [pc, ri] : pivot_to_row) {
            if (pc <= it->first || row[pc] == 0) continue;
            Rational f = std::move(row[pc]);
            row[pc] = 0;
            const auto& er = echelon[ri];
            for (size_t j = pc + 1; j < ncols; ++j)
                if (er[j] != 0) row[j] -= f * er[j];
        }
    }

    ReducedBasis out;
    out.truncation_ = m.truncation();
    out.columns_ = m.columns();
    out.rref_.reserve(echelon.size());
    out.pivots_.reserve(echelon.size());
    for (const auto& [pc, ri] : pivot_to_row) {
        out.pivots_.push_back(pc);
        out.rref_.push_back(std::move(echelon[ri]));
    }
    out.rebuild_column_index();
    return out;
}

bool ReducedBasis::is_pivot(const Composition& s) const {
    auto it = column_index_.find(s);
    if (it == column_index_.end()) return false;
    return std::binary_search(pivots_.begin(), pivots_.end(), it->second);
}

TruncatedSeries ReducedBasis::reduce_element(const TruncatedSeries& a) const {
    if (a.truncation() != truncation_)
        throw std::invalid_argument("series truncation does not match the basis truncation");
    std::vector<Rational> coords(columns_.size(), Rational(0));
    for (const auto& [s, c] : a.terms()) {
        if (s.empty()) continue;
        coords[column_index_.at(s)] = c;
    }
    for (size_t r = 0; r < rref_.size(); ++r) {
        size_t pc = pivots_[r];
        if (coords[pc] == 0) continue;
        Rational f = std::move(coords[pc]);
        coords[pc] = 0;
        const auto& row = rref_[r];
        for (size_t j = pc + 1; j < columns_.size(); ++j)
            if (row[j] != 0) coords[j] -= f * row[j];
    }
    TruncatedSeries out(truncation_);
    out.add_term(Composition{}, a.constant_term());
    for (size_t j = 0; j < columns_.size(); ++j)
        if (coords[j] != 0) out.add_term(columns_[j], coords[j]);
    return out;
}

CongruenceStatement ReducedBasis::congruence_for(const TruncatedSeries& a) const {
    TruncatedSeries diff = a - reduce_element(a);
    if (diff.constant_term() != 0)
        throw std::invalid_argument("reduction changed the constant term; no congruence exists");
    CongruenceStatement out(truncation_);
    for (const auto& [s, c] : diff.terms()) out.add_term(s, c);
    return out;
}

std::vector<std::vector<Rational>> ReducedBasis::discover(
    const std::vector<TruncatedSeries>& elements) const {
    const size_t k = elements.size();
    std::map<Composition, size_t, GradedLess> essential_index;
    for (size_t i = 0; i < essentials_.size(); ++i) essential_index.emplace(essentials_[i], i);

    // columns of A are the elements, rows the essential coordinates
    std::vector<std::vector<Rational>> a(essentials_.size() + 1, std::vector<Rational>(k, 0));
    for (size_t i = 0; i < k; ++i) {
        TruncatedSeries phi = reduce_element(elements[i]);
        for (const auto& [s, c] : phi.terms()) {
            if (s.empty())
                a[essentials_.size()][i] = c;  // constants must cancel in a relation too
            else
                a[essential_index.at(s)][i] = c;
        }
    }
    auto pivots = row_reduce(a);

    std::vector<std::vector<Rational>> basis;
    std::vector<bool> is_pivot_col(k, false);
    for (size_t p : pivots) is_pivot_col[p] = true;
    for (size_t free = 0; free < k; ++free) {
        if (is_pivot_col[free]) continue;
        std::vector<Rational> v(k, 0);
        v[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
        // integer-normalize: clear denominators, divide by content, first entry positive
        Integer lcm = 1;
        for (const auto& x : v)
            if (x != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
        Integer content = 0;
        for (auto& x : v) {
            x *= Rational(lcm);
            x.canonicalize();
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_num().get_mpz_t());
        }
        if (content > 1)
            for (auto& x : v) {
                x /= Rational(content);
                x.canonicalize();
            }
        for (const auto& x : v) {
            if (x == 0) continue;
            if (x < 0)
                for (auto& y : v) y = -y;
            break;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---- persistence --------------------------------------------------------------

namespace {
constexpr const char* kBasisFormat = "wzeta-basis";
constexpr int kBasisFormatVersion = 1;
}  // namespace

void ReducedBasis::save(const std::filesystem::path& path) const {
    nlohmann::json columns = nlohmann::json::array();
    for (const auto& c : columns_) columns.push_back(c.str());
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : rref_) {
        nlohmann::json dense = nlohmann::json::array();
        for (const auto& c : row) dense.push_back(rational_to_string(c));
        rows.push_back(std::move(dense));
    }
    nlohmann::json j{{"format", kBasisFormat},
                     {"format_version", kBasisFormatVersion},
                     {"kernel_version", kKernelVersion},
                     {"truncation", truncation_},
                     {"columns", std::move(columns)},
                     {"rows", std::move(rows)}};
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << j.dump() << '\n';
    if (!os) throw std::runtime_error("failed writing " + path.string());
}

ReducedBasis ReducedBasis::load(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("corrupt basis file " + path.string() + ": " + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != kBasisFormat)
            throw std::runtime_error("not a basis file");
        if (j.at("format_version").get<int>() != kBasisFormatVersion)
            throw std::runtime_error("unsupported basis format version");
        if (j.at("kernel_version").get<int>() != kKernelVersion)
            throw std::runtime_error("basis was computed with a different kernel version");
        ReducedBasis out;
        out.truncation_ = j.at("truncation").get<int>();
        if (out.truncation_ < 2) throw std::runtime_error("bad truncation");
        out.columns_ = nonempty_columns(out.truncation_);
        const auto& stored = j.at("columns");
        if (stored.size() != out.columns_.size())
            throw std::runtime_error("column count does not match the truncation");
        for (size_t i = 0; i < out.columns_.size(); ++i)
            if (Composition::parse(stored.at(i).get<std::string>()) != out.columns_[i])
                throw std::runtime_error("column labels do not match the truncation");
        for (const auto& row : j.at("rows")) {
            if (row.size() != out.columns_.size())
                throw std::runtime_error("row length does not match the columns");
            std::vector<Rational> dense;
            dense.reserve(out.columns_.size());
            for (const auto& e : row) dense.push_back(rational_from_string(e.get<std::string>()));
            size_t pivot = 0;
            while (pivot < dense.size() && dense[pivot] == 0) ++pivot;
            if (pivot == dense.size()) throw std::runtime_error("zero row in basis file");
            if (!out.pivots_.empty() && pivot <= out.pivots_.back())
                throw std::runtime_error("pivot columns not strictly increasing");
            out.pivots_.push_back(pivot);
            out.rref_.push_back(std::move(dense));
        }
        out.rebuild_column_index();
        out.validate();
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("corrupt basis file " + path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("corrupt basis file " + path.string() + ": " + e.what());
    }
}

void ReducedBasis::validate() const {
    if (rank() + essentials_.size() != columns_.size())
        throw std::runtime_error("basis invariant violated: rank + essentials != columns");
    std::set<size_t> pivot_set(pivots_.begin(), pivots_.end());
    for (size_t r = 0; r < rref_.size(); ++r) {
        if (rref_[r][pivots_[r]] != 1)
            throw std::runtime_error("basis invariant violated: pivot entry is not 1");
        for (size_t other : pivot_set)
            if (other != pivots_[r] && rref_[r][other] != 0)
                throw std::runtime_error("basis invariant violated: nonzero at another pivot");
    }
}

}  // namespace wzeta
