#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netpoly/codec.hpp"
#include "netpoly/factor.hpp"
#include "netpoly/isomorphism.hpp"
#include "netpoly/net.hpp"
#include "netpoly/net_io.hpp"
#include "netpoly/polynomial.hpp"

namespace netpoly::cli {

/// Exit codes of the ppn tool.
enum ExitCode : int {
    kOk = 0,
    kNotIsomorphic = 1,
    kUsage = 2,
    kPrecondition = 3,
};

struct RunResult {
    int exit_code = kOk;
    std::string out;
    std::string err;
};

namespace detail {

/// Missing or unreadable input file; reported like a usage error.
class InputError : public Error {
public:
    using Error::Error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline NetDocument load_net(const std::string& path) {
    try {
        return read_net(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const StructureError& e) {
        throw StructureError(path + ": " + e.what());
    }
}

inline Polynomial load_poly_text(const std::string& text, const std::string& origin) {
    try {
        return parse_poly(text);
    } catch (const ParseError& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

/// Embedded labels when present, else compact labels with a note on stderr.
inline Labeling labels_for(const NetDocument& doc, const std::string& path, std::ostream& err) {
    if (doc.labeling) return *doc.labeling;
    err << "note: " << path << " has no labels; using conditions sorted by id as 0, 1, 2, ...\n";
    return compact_labeling(doc.net);
}

inline void warn_isolated(const PetriNet& n, const std::string& path, std::ostream& err) {
    const auto isolated = isolated_conditions(n);
    if (isolated.empty()) return;
    err << "warning: " << path << ": isolated conditions are not visible in the polynomial:";
    for (const auto& b : isolated) err << ' ' << b;
    err << '\n';
}

inline FactorOptions factor_options_from_env() {
    FactorOptions opts;
    if (const char* env = std::getenv("PPN_MAX_SUPPORT")) {
        const std::string value(env);
        if (value.empty() || !std::all_of(value.begin(), value.end(), [](unsigned char ch) { return std::isdigit(ch); }) ||
            value.size() > 4) {
            throw InputError("PPN_MAX_SUPPORT must be a natural number, got '" + value + "'");
        }
        opts.max_support = std::stoul(value);
    }
    return opts;
}

inline std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

}  // namespace detail

/// Run one ppn invocation. `args` excludes the program name. Nothing is
/// written to `out` unless the command succeeds (exit 0, or 1 for iso).
inline RunResult run(const std::vector<std::string>& args) {
    CLI::App app{"Petri nets as polynomials over N[x,y]", "ppn"};
    app.require_subcommand(1);

    std::vector<std::string> polys, poly_files, nets;
    bool with_nets = false;

    auto* encode_cmd = app.add_subcommand("encode", "net -> polynomial (embedded labels, or compact by sorted id)");
    encode_cmd->add_option("net", nets, "net document")->required()->expected(1);

    auto* decode_cmd = app.add_subcommand("decode", "polynomial -> labeled net document");
    auto* mul_cmd = app.add_subcommand("mul", "product of polynomials");
    auto* add_cmd = app.add_subcommand("add", "sum of polynomials");
    auto* decompose_cmd = app.add_subcommand("decompose", "prime factors of a polynomial or net, one per line");
    for (auto* cmd : {decode_cmd, mul_cmd, add_cmd, decompose_cmd}) {
        cmd->add_option("-p,--poly", polys, "polynomial text");
        cmd->add_option("-P,--poly-file", poly_files, "file holding polynomial text");
    }
    decompose_cmd->add_option("net", nets, "net document")->expected(0, 1);
    decompose_cmd->add_flag("--nets", with_nets, "also print the factor nets as a JSON array");

    auto* product_cmd = app.add_subcommand("product", "synchronization product of two nets");
    auto* attach_cmd = app.add_subcommand("attach", "attach two labeled nets along equal labels");
    auto* iso_cmd = app.add_subcommand("iso", "isomorphism witness, exit 1 if none");
    for (auto* cmd : {product_cmd, attach_cmd, iso_cmd}) cmd->add_option("nets", nets, "two net documents")->required()->expected(2);

    auto* canon_cmd = app.add_subcommand("canon", "labeling-independent canonical polynomial");
    auto* dot_cmd = app.add_subcommand("dot", "Graphviz rendering");
    auto* validate_cmd = app.add_subcommand("validate", "structural check; warnings on stdout");
    for (auto* cmd : {canon_cmd, dot_cmd, validate_cmd}) cmd->add_option("net", nets, "net document")->required()->expected(1);

    RunResult result;
    std::ostringstream out, err;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        result.out = app.help();
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = kUsage;
        result.err = "error: " + detail::one_line(e.what()) + "\n";
        return result;
    }

    auto gather_polys = [&]() {
        std::vector<Polynomial> ps;
        for (const auto& text : polys) ps.push_back(detail::load_poly_text(text, "-p"));
        for (const auto& path : poly_files) ps.push_back(detail::load_poly_text(detail::read_file(path), path));
        return ps;
    };
    auto usage = [](const std::string& msg) { throw CLI::ValidationError(msg); };

    try {
        if (*encode_cmd) {
            const auto doc = detail::load_net(nets[0]);
            const auto l = detail::labels_for(doc, nets[0], err);
            detail::warn_isolated(doc.net, nets[0], err);
            out << print_poly(encode(doc.net, l)) << '\n';
        } else if (*decode_cmd) {
            const auto ps = gather_polys();
            if (ps.size() != 1) usage("decode takes exactly one polynomial");
            const auto decoded = decode(ps[0]);
            out << write_net(decoded.net, decoded.labeling);
        } else if (*mul_cmd || *add_cmd) {
            const auto ps = gather_polys();
            if (ps.empty()) usage("at least one polynomial is required");
            Polynomial acc = ps[0];
            for (std::size_t k = 1; k < ps.size(); ++k) acc = *mul_cmd ? mul(acc, ps[k]) : add(acc, ps[k]);
            out << print_poly(acc) << '\n';
        } else if (*decompose_cmd) {
            const auto opts = detail::factor_options_from_env();
            auto ps = gather_polys();
            if (ps.size() + nets.size() != 1) usage("decompose takes exactly one polynomial or net");
            Polynomial p;
            if (!nets.empty()) {
                const auto doc = detail::load_net(nets[0]);
                const auto l = detail::labels_for(doc, nets[0], err);
                detail::warn_isolated(doc.net, nets[0], err);
                p = encode(doc.net, l);
            } else {
                p = ps[0];
            }
            const auto factors = decompose(p, opts);
            for (const auto& f : factors) out << print_poly(f) << '\n';
            if (with_nets) {
                auto arr = nlohmann::ordered_json::array();
                for (const auto& f : factors) {
                    const auto d = decode(f);
                    arr.push_back(net_to_json(d.net, &d.labeling));
                }
                out << arr.dump(2) << '\n';
            }
        } else if (*product_cmd) {
            const auto a = detail::load_net(nets[0]);
            const auto b = detail::load_net(nets[1]);
            std::optional<Labeling> l;
            if (a.labeling && b.labeling) {
                std::set<Label> left;
                for (const auto& [id, v] : *a.labeling) left.insert(v);
                const bool overlap = std::any_of(b.labeling->begin(), b.labeling->end(), [&](const auto& kv) { return left.count(kv.second) > 0; });
                if (!overlap) l = product_labeling(*a.labeling, *b.labeling);
            }
            out << write_net(product(a.net, b.net), l);
        } else if (*attach_cmd) {
            const auto a = detail::load_net(nets[0]);
            const auto b = detail::load_net(nets[1]);
            if (!a.labeling || !b.labeling) throw PreconditionError("attach requires labels in both nets");
            const auto r = attach(a.net, *a.labeling, b.net, *b.labeling);
            out << write_net(r.net, r.labeling);
        } else if (*iso_cmd) {
            const auto a = detail::load_net(nets[0]);
            const auto b = detail::load_net(nets[1]);
            const auto iso = are_isomorphic(a.net, b.net);
            if (!iso) {
                result.exit_code = kNotIsomorphic;
                result.err = err.str();
                return result;
            }
            nlohmann::ordered_json w;
            w["conditions"] = nlohmann::ordered_json::object();
            for (const auto& [x, y] : iso->conditions) w["conditions"][x] = y;
            w["events"] = nlohmann::ordered_json::object();
            for (const auto& [x, y] : iso->events) w["events"][x] = y;
            out << w.dump(2) << '\n';
        } else if (*canon_cmd) {
            out << print_poly(canonical_poly(detail::load_net(nets[0]).net)) << '\n';
        } else if (*dot_cmd) {
            out << to_dot(detail::load_net(nets[0]).net);
        } else if (*validate_cmd) {
            NetDocument doc;
            try {
                doc = parse_net_document(detail::read_file(nets[0]));
            } catch (const ParseError& e) {
                throw ParseError(nets[0] + ": " + e.what());
            }
            auto report = check(doc.net);
            if (doc.labeling && report.ok()) {
                std::map<Label, ConditionId> seen;
                for (const auto& b : doc.net.conditions) {
                    auto [it, inserted] = seen.emplace(doc.labeling->at(b), b);
                    if (!inserted) report.errors.push_back("conditions " + it->second + " and " + b + " share label " + std::to_string(it->first));
                }
            }
            if (!report.ok()) {
                std::string msg = nets[0] + ": invalid net:";
                for (std::size_t k = 0; k < report.errors.size(); ++k) msg += (k ? "; " : " ") + report.errors[k];
                throw StructureError(msg);
            }
            for (const auto& w : report.warnings) out << "warning: " << w << '\n';
            out << "valid\n";
        }
    } catch (const CLI::ValidationError& e) {
        result.exit_code = kUsage;
        result.err = err.str() + "error: " + detail::one_line(e.what()) + "\n";
        return result;
    } catch (const PreconditionError& e) {
        result.exit_code = kPrecondition;
        result.err = err.str() + "error: " + detail::one_line(e.what()) + "\n";
        return result;
    } catch (const Error& e) {
        result.exit_code = kUsage;
        result.err = err.str() + "error: " + detail::one_line(e.what()) + "\n";
        return result;
    }
    result.out = out.str();
    result.err = err.str();
    return result;
}

}  // namespace netpoly::cli
