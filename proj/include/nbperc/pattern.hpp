#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "nbperc/dense_eigen.hpp"
#include "nbperc/error.hpp"

namespace nbperc {

/// Class-count description of an infinite quasi-transitive tree.
///
/// counts(i, j) is the number of neighbors of class j that every vertex of
/// class i has. Support must be symmetric: a class-i vertex has a class-j
/// neighbor iff the reverse holds.
class QuotientPattern {
public:
    QuotientPattern() = default;

    QuotientPattern(std::size_t classes, std::vector<std::int64_t> counts, std::vector<std::string> names = {})
        : classes_(classes), counts_(std::move(counts)), names_(std::move(names)) {
        validate();
    }

    std::size_t classes() const noexcept { return classes_; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return counts_[i * classes_ + j]; }
    const std::vector<std::int64_t>& counts() const noexcept { return counts_; }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::string class_name(std::size_t i) const { return i < names_.size() ? names_[i] : std::to_string(i); }

private:
    void validate() const {
        if (classes_ == 0) throw InputError("pattern must have at least one class");
        if (counts_.size() != classes_ * classes_)
            throw InputError("pattern counts must have classes^2 = " + std::to_string(classes_ * classes_) +
                             " entries, got " + std::to_string(counts_.size()));
        if (!names_.empty() && names_.size() != classes_)
            throw InputError("pattern names must have one entry per class");
        bool any = false;
        for (std::size_t i = 0; i < classes_; ++i) {
            for (std::size_t j = 0; j < classes_; ++j) {
                auto c = (*this)(i, j);
                if (c < 0) throw InputError("pattern counts must be nonnegative");
                if ((c > 0) != ((*this)(j, i) > 0))
                    throw InputError("pattern support is not symmetric at (" + std::to_string(i) + "," +
                                     std::to_string(j) + ")");
                any = any || c > 0;
            }
        }
        if (!any) throw InputError("pattern has no edges");
    }

    std::size_t classes_ = 0;
    std::vector<std::int64_t> counts_;
    std::vector<std::string> names_;
};

/// Reads {"classes": c, "counts": [[...], ...]} (nested rows or a flat
/// row-major list), with an optional "names" array.
inline QuotientPattern parse_pattern_json(const nlohmann::json& doc) {
    try {
        if (!doc.is_object()) throw InputError("pattern document must be a JSON object");
        if (!doc.contains("classes") || !doc.contains("counts"))
            throw InputError("pattern document needs \"classes\" and \"counts\"");
        const auto& jc = doc.at("classes");
        if (!jc.is_number_integer() || jc.get<std::int64_t>() < 1)
            throw InputError("\"classes\" must be a positive integer");
        auto c = jc.get<std::size_t>();
        const auto& jm = doc.at("counts");
        if (!jm.is_array()) throw InputError("\"counts\" must be an array");
        std::vector<std::int64_t> flat;
        auto take = [&](const nlohmann::json& v) {
            if (!v.is_number_integer()) throw InputError("\"counts\" entries must be integers");
            flat.push_back(v.get<std::int64_t>());
        };
        if (!jm.empty() && jm.front().is_array()) {
            if (jm.size() != c) throw InputError("\"counts\" must have one row per class");
            for (const auto& row : jm) {
                if (!row.is_array() || row.size() != c)
                    throw InputError("every \"counts\" row must have one entry per class");
                for (const auto& v : row) take(v);
            }
        } else {
            for (const auto& v : jm) take(v);
        }
        std::vector<std::string> names;
        if (doc.contains("names")) names = doc.at("names").get<std::vector<std::string>>();
        return QuotientPattern(c, std::move(flat), std::move(names));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("pattern document: ") + e.what());
    }
}

inline QuotientPattern parse_pattern_json(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("pattern file is not valid JSON: ") + e.what());
    }
    return parse_pattern_json(doc);
}

inline nlohmann::json to_json(const QuotientPattern& p) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < p.classes(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < p.classes(); ++j) row.push_back(p(i, j));
        rows.push_back(row);
    }
    nlohmann::json doc{{"classes", p.classes()}, {"counts", rows}};
    if (!p.names().empty()) doc["names"] = p.names();
    return doc;
}

/// Pattern of the tree obtained by hanging r chains of length L on every
/// vertex of the d-regular tree. Classes: backbone, then chain positions 1..L.
inline QuotientPattern chain_tree_pattern(int d, int r, int L) {
    if (d < 2 || r < 1 || L < 1) throw InputError("chain_tree_pattern needs d >= 2, r >= 1, L >= 1");
    const std::size_t c = static_cast<std::size_t>(L) + 1;
    std::vector<std::int64_t> m(c * c, 0);
    auto at = [&](std::size_t i, std::size_t j) -> std::int64_t& { return m[i * c + j]; };
    at(0, 0) = d;
    at(0, 1) = r;
    at(1, 0) = 1;
    for (std::size_t k = 1; k < c - 1; ++k) {
        at(k, k + 1) = 1;
        at(k + 1, k) = 1;
    }
    std::vector<std::string> names{"backbone"};
    for (int k = 1; k <= L; ++k) names.push_back("chain" + std::to_string(k));
    return QuotientPattern(c, std::move(m), std::move(names));
}

struct PatternSpectrum {
    /// Ordered class pairs (i; j) with counts(i, j) > 0, in row-major order.
    std::vector<std::pair<std::size_t, std::size_t>> states;
    Eigen::MatrixXd matrix;
    double rho = 0.0;
};

/// Non-backtracking operator on the pattern: state (i; j) feeds (j; l) with
/// weight counts(j, l) - [l == i].
inline PatternSpectrum pattern_hashimoto(const QuotientPattern& p) {
    PatternSpectrum out;
    const std::size_t c = p.classes();
    std::vector<std::ptrdiff_t> state_of(c * c, -1);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (p(i, j) > 0) {
                state_of[i * c + j] = static_cast<std::ptrdiff_t>(out.states.size());
                out.states.emplace_back(i, j);
            }
    const auto s = static_cast<Eigen::Index>(out.states.size());
    out.matrix = Eigen::MatrixXd::Zero(s, s);
    for (Eigen::Index a = 0; a < s; ++a) {
        auto [i, j] = out.states[static_cast<std::size_t>(a)];
        for (std::size_t l = 0; l < c; ++l) {
            if (p(j, l) == 0) continue;
            auto w = p(j, l) - (l == i ? 1 : 0);
            if (w < 0)
                throw InvalidPattern("pattern yields a negative transition weight from (" + p.class_name(i) + ";" +
                                     p.class_name(j) + ")");
            out.matrix(a, state_of[j * c + l]) = static_cast<double>(w);
        }
    }
    out.rho = dense_spectral_radius(out.matrix);
    return out;
}

/// Spectral radius of the class-count matrix itself: the growth rate of the
/// pattern's tree, i.e. its adjacency spectral radius in the quotient sense.
inline double pattern_adjacency_radius(const QuotientPattern& p) {
    const auto c = static_cast<Eigen::Index>(p.classes());
    Eigen::MatrixXd m(c, c);
    for (Eigen::Index i = 0; i < c; ++i)
        for (Eigen::Index j = 0; j < c; ++j)
            m(i, j) = static_cast<double>(p(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    return dense_spectral_radius(m);
}

} // namespace nbperc
