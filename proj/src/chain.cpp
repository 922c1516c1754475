#include "hitting/chain.hpp"

#include "hitting/errors.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <deque>

namespace hitting {

namespace {

void check_shape(const RationalMatrix &m) {
    if (!m.is_square())
        throw ShapeError("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ", expected square");
    if (m.rows() < 2)
        throw ShapeError("need at least one transient state besides the absorbing one (d >= 1)");
}

std::string cell(std::size_t r, std::size_t c) {
    return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
}

/// Backward breadth-first search from the absorbing state over the support.
std::vector<bool> reachability(const RationalMatrix &m) {
    const std::size_t n = m.rows();
    const std::size_t target = n - 1;
    std::vector<bool> reaches(n, false);
    reaches[target] = true;
    std::deque<std::size_t> frontier{target};
    while (!frontier.empty()) {
        const std::size_t j = frontier.front();
        frontier.pop_front();
        for (std::size_t i = 0; i < n; ++i) {
            if (!reaches[i] && i != j && m(i, j).sign() > 0) {
                reaches[i] = true;
                frontier.push_back(i);
            }
        }
    }
    return reaches;
}

BigRational entry_from_json(const nlohmann::json &value, std::size_t r, std::size_t c) {
    if (value.is_number_integer())
        return BigRational::parse(value.dump());
    if (value.is_string())
        return BigRational::parse(value.get<std::string>());
    if (value.is_number_float())
        throw SyntaxError("entry " + cell(r, c) +
                          " is a binary floating-point number; write it as a decimal string");
    throw SyntaxError("entry " + cell(r, c) + " must be an integer or a string");
}

} // namespace

std::string_view to_string(ChainKind kind) {
    return kind == ChainKind::discrete ? "discrete" : "continuous";
}

bool DiscreteChain::all_reach_absorbing() const {
    return std::all_of(reaches_.begin(), reaches_.end(), [](bool b) { return b; });
}

bool ContinuousChain::all_reach_absorbing() const {
    return std::all_of(reaches_.begin(), reaches_.end(), [](bool b) { return b; });
}

DiscreteChain validate_discrete(RationalMatrix m) {
    check_shape(m);
    const std::size_t n = m.rows();
    for (std::size_t r = 0; r < n; ++r) {
        BigRational sum;
        for (std::size_t c = 0; c < n; ++c) {
            if (m(r, c).sign() < 0)
                throw NegativeEntryError("entry " + cell(r, c) + " = " + m(r, c).to_string());
            sum += m(r, c);
        }
        if (sum != BigRational(1))
            throw RowSumError("row " + std::to_string(r) + " sums to " + sum.to_string() +
                              ", expected 1");
    }
    for (std::size_t c = 0; c + 1 < n; ++c)
        if (!m(n - 1, c).is_zero())
            throw AbsorbingRowError("last row must be (0, ..., 0, 1)");
    std::vector<bool> reaches = reachability(m);
    return DiscreteChain(std::move(m), std::move(reaches));
}

DiscreteChain validate_discrete(const std::vector<std::vector<BigRational>> &rows) {
    return validate_discrete(make_matrix(rows));
}

ContinuousChain validate_continuous(RationalMatrix m) {
    check_shape(m);
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c)
        if (!m(n - 1, c).is_zero())
            throw AbsorbingRowError("last row of the generator must be all zeros");
    for (std::size_t r = 0; r + 1 < n; ++r) {
        BigRational sum;
        for (std::size_t c = 0; c < n; ++c) {
            if (r != c && m(r, c).sign() < 0)
                throw NegativeEntryError("off-diagonal rate " + cell(r, c) + " = " +
                                         m(r, c).to_string());
            sum += m(r, c);
        }
        if (!sum.is_zero())
            throw RowSumError("row " + std::to_string(r) + " sums to " + sum.to_string() +
                              ", expected 0");
    }
    std::vector<bool> reaches = reachability(m);
    return ContinuousChain(std::move(m), std::move(reaches));
}

ContinuousChain validate_continuous(const std::vector<std::vector<BigRational>> &rows) {
    return validate_continuous(make_matrix(rows));
}

Chain parse_chain(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw SyntaxError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw SyntaxError("chain document must be a JSON object");
    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw SyntaxError("missing string field \"kind\"");
    if (!doc.contains("matrix") || !doc["matrix"].is_array())
        throw SyntaxError("missing array field \"matrix\"");

    const std::string kind = doc["kind"].get<std::string>();
    if (kind != "discrete" && kind != "continuous")
        throw SyntaxError("kind must be \"discrete\" or \"continuous\", got \"" + kind + "\"");

    const auto &rows_json = doc["matrix"];
    std::vector<std::vector<BigRational>> rows;
    rows.reserve(rows_json.size());
    for (std::size_t r = 0; r < rows_json.size(); ++r) {
        if (!rows_json[r].is_array())
            throw SyntaxError("matrix row " + std::to_string(r) + " is not an array");
        auto &row = rows.emplace_back();
        for (std::size_t c = 0; c < rows_json[r].size(); ++c)
            row.push_back(entry_from_json(rows_json[r][c], r, c));
    }
    RationalMatrix m = make_matrix(rows);
    if (kind == "discrete")
        return validate_discrete(std::move(m));
    return validate_continuous(std::move(m));
}

std::string serialize_chain(const Chain &chain) {
    nlohmann::ordered_json doc;
    const RationalMatrix &m = std::visit([](const auto &c) -> const RationalMatrix & { return c.matrix(); }, chain);
    doc["kind"] = std::string(to_string(kind_of(chain)));
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c).to_string());
        rows.push_back(std::move(row));
    }
    doc["matrix"] = std::move(rows);
    return doc.dump() + "\n";
}

ChainKind kind_of(const Chain &chain) {
    return std::holds_alternative<DiscreteChain>(chain) ? ChainKind::discrete : ChainKind::continuous;
}

std::size_t absorbing_index(const Chain &chain) {
    return std::visit([](const auto &c) { return c.d(); }, chain);
}

std::string chain_digest(const Chain &chain) {
    const std::string canonical = serialize_chain(chain);
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(canonical.data(), canonical.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int k = 0; k < len; ++k) {
        out.push_back(hex[md[k] >> 4]);
        out.push_back(hex[md[k] & 0xF]);
    }
    return out;
}

} // namespace hitting
