#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lame/lamefun.hpp"
#include "lame/spectrum.hpp"
#include "lame/verify.hpp"

namespace lame::cli {

// Shortest round-trip decimal form; locale-independent by construction.
inline std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_real(std::string_view tok, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(std::string(tok), &used);
        if (used != tok.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::domain_error(what + ": cannot parse \"" + std::string(tok) + "\"");
    }
}

// Range endpoints in units of the quarter period: "-2K", "1.5K", "K", or a
// plain real meaning an absolute coordinate.
inline double parse_range_endpoint(std::string_view tok, double K, const std::string& what) {
    if (tok.empty()) throw std::domain_error(what + ": empty endpoint");
    if (tok.back() == 'K' || tok.back() == 'k') {
        std::string_view coef = tok.substr(0, tok.size() - 1);
        if (coef.empty() || coef == "+") return K;
        if (coef == "-") return -K;
        return parse_real(coef, what) * K;
    }
    return parse_real(tok, what);
}

inline std::pair<double, double> parse_range(const std::string& text, double K) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::domain_error("range: expected \"a:b\", got \"" + text + "\"");
    const double a = parse_range_endpoint(text.substr(0, colon), K, "range");
    const double b = parse_range_endpoint(text.substr(colon + 1), K, "range");
    if (!(a < b)) throw std::domain_error("range: endpoints must satisfy a < b");
    return {a, b};
}

inline FamilyTag parse_family(std::string text, LameIndex idx) {
    for (char& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    FamilyTag f;
    if (text.empty()) f = idx.is_integer() ? FamilyTag::IntFirst : FamilyTag::Half;
    else if (text == "first" || text == "intfirst" || text == "1") f = FamilyTag::IntFirst;
    else if (text == "second" || text == "intsecond" || text == "2") f = FamilyTag::IntSecond;
    else if (text == "half") f = FamilyTag::Half;
    else throw std::domain_error("family: expected first|second|half, got \"" + text + "\"");
    if (!family_valid(f, idx))
        throw std::domain_error(std::string("family: ") + family_name(f) +
                                " is not valid for lambda = " + idx.str());
    return f;
}

inline void write_output(const std::string& payload, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::domain_error("output: cannot open \"" + path + "\" for writing");
    out << payload;
}

inline void validate_m(double m) {
    if (!(m > 0.0) || m > kModulusMax) throw std::domain_error("m: expected 0 < m < 1");
}

inline int run(int argc, const char* const* argv) {
    CLI::App app{"Algebraic band-edge energies and eigenfunctions of the Lame equation"};
    app.require_subcommand(1);

    std::string lambda_text, family_text, range_text = "-2K:2K", format = "csv";
    std::string output = "-", m_grid = "0.1:0.9:9";
    double m = 0.5;
    int index = 0, branch = 1, samples = 129;

    const auto add_common = [&](CLI::App* sub, bool needs_m = true) {
        sub->add_option("--lambda", lambda_text, "degree parameter, \"p\" or \"p/2\"")->required();
        if (needs_m) sub->add_option("--m", m, "modulus parameter in (0,1)")->required();
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output", output, "output path, \"-\" for stdout");
    };

    CLI::App* energies = app.add_subcommand("energies", "algebraic band-edge energies");
    add_common(energies);

    CLI::App* eigen = app.add_subcommand("eigenfunction", "sample one eigenfunction");
    add_common(eigen);
    eigen->add_option("--family", family_text, "first|second (integer lambda)");
    eigen->add_option("--index", index, "energy index within the family");
    eigen->add_option("--branch", branch, "1 or 2 (half-integer lambda)")->check(CLI::IsMember({1, 2}));
    eigen->add_option("--samples", samples, "number of sample points (>= 2)");
    eigen->add_option("--range", range_text, "sampling range, e.g. \"-2K:2K\" or \"0:6.5\"");

    CLI::App* critical = app.add_subcommand("critical-poly", "monic critical polynomial");
    add_common(critical);
    critical->add_option("--family", family_text, "first|second|half");

    CLI::App* verify = app.add_subcommand("verify", "run the invariant battery");
    add_common(verify);

    CLI::App* sweep = app.add_subcommand("sweep", "band-edge energies over an m grid");
    sweep->add_option("--lambda", lambda_text, "degree parameter, \"p\" or \"p/2\"")->required();
    sweep->add_option("--m-grid", m_grid, "grid \"start:stop:count\"")->required();
    sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--output", output, "output path, \"-\" for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        const LameIndex idx = LameIndex::parse(lambda_text);

        if (energies->parsed()) {
            validate_m(m);
            const auto results = algebraic_energies(idx, m);
            std::string payload;
            if (format == "json") {
                nlohmann::ordered_json j;
                j["lambda"] = idx.str();
                j["m"] = m;
                j["results"] = nlohmann::ordered_json::array();
                for (const auto& r : results)
                    for (std::size_t i = 0; i < r.energies.size(); ++i)
                        j["results"].push_back({{"family", family_name(r.family)},
                                                {"index", i},
                                                {"energy", r.energies[i]}});
                payload = j.dump(2) + "\n";
            } else {
                payload = "E,family,index\n";
                for (const auto& r : results)
                    for (std::size_t i = 0; i < r.energies.size(); ++i)
                        payload += format_double(r.energies[i]) + "," + family_name(r.family) +
                                   "," + std::to_string(i) + "\n";
            }
            write_output(payload, output);
            return 0;
        }

        if (eigen->parsed()) {
            validate_m(m);
            const FamilyTag fam = parse_family(family_text, idx);
            const auto specs = build_eigenfunctions(idx, m);
            const EigenfunctionSpec* pick = nullptr;
            for (const auto& s : specs) {
                const bool branch_ok =
                    idx.is_integer() || s.branch == (branch == 1 ? Branch::One : Branch::Two);
                if (s.family == fam && s.index == index && branch_ok) pick = &s;
            }
            if (!pick)
                throw std::domain_error("index: no eigenfunction with index " +
                                        std::to_string(index) + " in family " + family_name(fam));
            if (samples < 2) throw std::domain_error("samples: expected >= 2");
            const EllipticModulus mod(m);
            const auto [a, b] = parse_range(range_text, mod.big_K());
            std::string payload;
            if (format == "json") {
                nlohmann::ordered_json j;
                j["lambda"] = idx.str();
                j["m"] = m;
                j["family"] = family_name(fam);
                j["index"] = index;
                if (!idx.is_integer()) j["branch"] = branch;
                j["energy"] = pick->energy;
                j["class"] = ince_label(*pick);
                j["scale"] = pick->scale;
                j["samples"] = nlohmann::ordered_json::array();
                for (int i = 0; i < samples; ++i) {
                    const double x = a + (b - a) * i / (samples - 1);
                    j["samples"].push_back({{"x", x}, {"psi", eval(*pick, x)}});
                }
                payload = j.dump(2) + "\n";
            } else {
                payload = "x,psi\n";
                for (int i = 0; i < samples; ++i) {
                    const double x = a + (b - a) * i / (samples - 1);
                    payload += format_double(x) + "," + format_double(eval(*pick, x)) + "\n";
                }
            }
            write_output(payload, output);
            return 0;
        }

        if (critical->parsed()) {
            validate_m(m);
            const FamilyTag fam = parse_family(family_text, idx);
            const Poly p = critical_polynomial(fam, idx, m);
            std::string payload;
            if (format == "json") {
                nlohmann::ordered_json j;
                j["lambda"] = idx.str();
                j["m"] = m;
                j["family"] = family_name(fam);
                j["coefficients"] = p.c;
                payload = j.dump(2) + "\n";
            } else {
                payload = "degree,coefficient\n";
                for (std::size_t i = 0; i < p.c.size(); ++i)
                    payload += std::to_string(i) + "," + format_double(p.c[i]) + "\n";
            }
            write_output(payload, output);
            return 0;
        }

        if (verify->parsed()) {
            validate_m(m);
            const VerificationReport rep = check_structure(idx, m);
            write_output(to_json(rep).dump(2) + "\n", output);
            return rep.overall ? 0 : 2;
        }

        if (sweep->parsed()) {
            const auto c1 = m_grid.find(':');
            const auto c2 = (c1 == std::string::npos) ? std::string::npos : m_grid.find(':', c1 + 1);
            if (c2 == std::string::npos)
                throw std::domain_error("m-grid: expected \"start:stop:count\"");
            const double start = parse_real(m_grid.substr(0, c1), "m-grid start");
            const double stop = parse_real(m_grid.substr(c1 + 1, c2 - c1 - 1), "m-grid stop");
            const long count = std::lround(parse_real(m_grid.substr(c2 + 1), "m-grid count"));
            if (count < 1) throw std::domain_error("m-grid: count must be >= 1");
            validate_m(start);
            validate_m(stop);
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            std::string payload = "m,family,index,E\n";
            for (long k = 0; k < count; ++k) {
                const double mk = (count == 1) ? start : start + (stop - start) * k / (count - 1);
                for (const auto& r : algebraic_energies(idx, mk))
                    for (std::size_t i = 0; i < r.energies.size(); ++i) {
                        if (format == "json")
                            rows.push_back({{"m", mk},
                                            {"family", family_name(r.family)},
                                            {"index", i},
                                            {"energy", r.energies[i]}});
                        else
                            payload += format_double(mk) + "," + family_name(r.family) + "," +
                                       std::to_string(i) + "," + format_double(r.energies[i]) + "\n";
                    }
            }
            if (format == "json") {
                nlohmann::ordered_json j;
                j["lambda"] = idx.str();
                j["results"] = rows;
                payload = j.dump(2) + "\n";
            }
            write_output(payload, output);
            return 0;
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace lame::cli
