#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lame {

// Degree parameter of the equation, held exactly as 2λ so that integer and
// half-integer cases never go through floating point.
class LameIndex {
public:
    enum class Kind { Integer, HalfInteger };

    explicit LameIndex(int twice_lambda) : twice_lambda_(twice_lambda) {
        if (twice_lambda < 0)
            throw std::domain_error("lambda: must be a nonnegative integer or half-integer");
    }

    // Accepts "p" or "p/2" with nonnegative integer p; no float parsing.
    static LameIndex parse(std::string_view text) {
        const auto bad = [&] {
            return std::domain_error("lambda: expected \"p\" or \"p/2\" with integer p >= 0, got \"" +
                                     std::string(text) + "\"");
        };
        if (text.empty()) throw bad();
        const auto slash = text.find('/');
        const std::string_view num = text.substr(0, slash);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string_view::npos) throw bad();
        long p = 0;
        for (char ch : num) {
            p = p * 10 + (ch - '0');
            if (p > 1000000) throw bad();
        }
        if (slash == std::string_view::npos) return LameIndex(static_cast<int>(2 * p));
        const std::string_view den = text.substr(slash + 1);
        if (den != "2") throw bad();
        return LameIndex(static_cast<int>(p));
    }

    int twice_lambda() const { return twice_lambda_; }
    Kind kind() const { return (twice_lambda_ % 2 == 0) ? Kind::Integer : Kind::HalfInteger; }
    bool is_integer() const { return kind() == Kind::Integer; }
    double lambda() const { return 0.5 * twice_lambda_; }

    // λ as an exact integer; only meaningful for the integer kind.
    int integer_lambda() const {
        if (!is_integer()) throw std::logic_error("integer_lambda on half-integer index");
        return twice_lambda_ / 2;
    }

    std::string str() const {
        if (is_integer()) return std::to_string(twice_lambda_ / 2);
        return std::to_string(twice_lambda_) + "/2";
    }

    friend bool operator==(LameIndex a, LameIndex b) { return a.twice_lambda_ == b.twice_lambda_; }

private:
    int twice_lambda_;
};

enum class FamilyTag { IntFirst, IntSecond, Half };

inline const char* family_name(FamilyTag f) {
    switch (f) {
        case FamilyTag::IntFirst: return "IntFirst";
        case FamilyTag::IntSecond: return "IntSecond";
        default: return "Half";
    }
}

inline bool family_valid(FamilyTag f, LameIndex idx) {
    switch (f) {
        case FamilyTag::IntFirst: return idx.is_integer();
        case FamilyTag::IntSecond: return idx.is_integer() && idx.twice_lambda() >= 2;
        default: return !idx.is_integer();
    }
}

// Module dimension parameter n of the family: λ, λ-1, or λ-1/2.
inline int family_degree(FamilyTag f, LameIndex idx) {
    if (!family_valid(f, idx))
        throw std::domain_error(std::string("family ") + family_name(f) +
                                " is not valid for lambda = " + idx.str());
    switch (f) {
        case FamilyTag::IntFirst: return idx.twice_lambda() / 2;
        case FamilyTag::IntSecond: return idx.twice_lambda() / 2 - 1;
        default: return (idx.twice_lambda() - 1) / 2;
    }
}

}  // namespace lame
