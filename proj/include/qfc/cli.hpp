#pragma once

// The qfc command-line driver: argument parsing and command dispatch. run()
// never writes to the process streams; it returns the report and the exit
// code (0 ok, 1 parse error, 2 domain error, 3 bounded search inconclusive).

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <algorithm>
#include <variant>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfc/json.hpp"

namespace qfc::cli {

enum class Output { Json, Text };

struct CliRequest {
    std::string command;
    std::string base = "q";
    std::optional<std::string> d;
    std::optional<std::string> f1, f2, form;
    std::optional<std::string> ideal;  // inline JSON or a file path
    std::size_t search_bound = 1000;
    Output output = Output::Json;
};

struct CliResult {
    int exit_code = 0;
    std::string out;  // report
    std::string err;  // diagnostics
};

inline const std::vector<std::string>& commands()
{
    static const std::vector<std::string> names{"phi",      "psi",      "compose",  "identity", "inverse",
                                                "classtable", "oclcheck", "tpdcheck", "fundcheck"};
    return names;
}

/// QFC_BOUND, when set to a positive integer, replaces the built-in default of 1000.
inline std::size_t default_bound()
{
    if (const char* env = std::getenv("QFC_BOUND")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return 1000;
}

namespace detail {

using nlohmann::json;
namespace qj = qfc::json;



template <BaseField K>
std::string text(const KElement<K>& x)
{
    return x.to_string();
}

template <BaseField K>
std::string text(const QuadraticForm<K>& f)
{
    return "(" + f.to_string() + ")";
}

template <BaseField K>
std::string text(const LElement<K>& a)
{
    return "[" + a.x().to_string() + "] + [" + a.y().to_string() + "]*sqrt(D)";
}

template <BaseField K>
std::string text(const OrientedIdeal<K>& i)
{
    return "([" + text(i.basis.alpha) + ", " + text(i.basis.beta) + "]; " + i.eps.to_string() + ")";
}

/// "a,b,c" in element syntax, or a JSON form object.
template <BaseField K>
QuadraticForm<K> parse_form(const std::string& s)
{
    auto first = s.find_first_not_of(" \t");
    if (first != std::string::npos && s[first] == '{') {
        json j = json::parse(s, nullptr, false);
        if (j.is_discarded())
            raise(ErrorKind::ParseError, "malformed form JSON");
        return qj::decode_form<K>(j);
    }
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        parts.push_back(item);
    if (parts.size() != 3)
        raise(ErrorKind::ParseError, "a form is written a,b,c; got '" + s + "'");
    return {parse_kelement<K>(parts[0]), parse_kelement<K>(parts[1]), parse_kelement<K>(parts[2])};
}

inline json load_json(const std::string& arg)
{
    std::string body = arg;
    auto first = arg.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || arg[first] != '{') {
        std::ifstream in(arg);
        if (!in)
            raise(ErrorKind::ParseError, "cannot read '" + arg + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        body = buf.str();
    }
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded())
        raise(ErrorKind::ParseError, "malformed JSON in '" + arg + "'");
    return j;
}

inline const std::string& need(const std::optional<std::string>& v, const char* flag)
{
    if (!v)
        raise(ErrorKind::ParseError, std::string("missing ") + flag);
    return *v;
}

/// A report as JSON plus its text rendering.
struct Report {
    json data;
    std::vector<std::string> lines;
};

struct Unknown {
    Report report;
};

template <BaseField K>
Report run_in(const CliRequest& req)
{
    using S = KElement<K>;
    using F = QuadraticForm<K>;
    const std::string& cmd = req.command;
    Report rep;
    rep.data["command"] = cmd;
    rep.data["base"] = std::string(K::descriptor.name);

    if (cmd == "fundcheck") {
        const S d = parse_kelement<K>(need(req.d, "--d"));
        const bool qr = is_qr_mod4(d);
        const bool fund = is_fundamental(d);
        rep.data["D"] = qj::encode(d);
        rep.data["qr_mod4"] = qr;
        rep.data["fundamental"] = fund;
        rep.lines.push_back("D = " + d.to_string() + (fund ? " is" : " is not") + " fundamental over " +
                            std::string(K::descriptor.name) + " (QR mod 4: " + (qr ? "yes" : "no") + ")");
        return rep;
    }

    const Extension<K> ext = make_extension<K>(parse_kelement<K>(need(req.d, "--d")));
    rep.data["extension"] = qj::encode(ext);

    auto form_result = [&](const F& f) {
        rep.data["form"] = qj::encode(f);
        rep.data["disc"] = qj::encode(f.disc());
        std::string line = "form " + text(f) + "  disc " + f.disc().to_string();
        if constexpr (K::descriptor.degree() == 1) {
            if (f.disc().c0() < 0 && f.a.c0() > 0) {
                F r = reduce_form_Q(f);
                rep.data["reduced"] = qj::encode(r);
                line += "  reduced " + text(r);
            }
        }
        rep.lines.push_back(line);
    };

    if (cmd == "identity") {
        form_result(identity_form(ext));
    } else if (cmd == "inverse") {
        form_result(inverse_form(parse_form<K>(need(req.form, "--form"))));
    } else if (cmd == "psi") {
        const F f = parse_form<K>(need(req.form, "--form"));
        const OrientedIdeal<K> i = psi(ext, f);
        rep.data["ideal"] = qj::encode(i);
        rep.data["norm"] = qj::encode(rel_norm_ideal(i.basis));
        rep.lines.push_back("ideal " + text(i) + "  norm " + rel_norm_ideal(i.basis).to_string());
    } else if (cmd == "phi") {
        const OrientedIdeal<K> i = qj::decode_ideal<K>(load_json(need(req.ideal, "--ideal")), ext);
        form_result(phi(i));
    } else if (cmd == "compose") {
        const F f1 = parse_form<K>(need(req.f1, "--f1"));
        const F f2 = parse_form<K>(need(req.f2, "--f2"));
        form_result(compose(ext, f1, f2));
    } else if (cmd == "classtable") {
        const auto forms = enumerate_classes_Q(ext.discriminant());
        json classes = json::array();
        for (const auto& f : forms)
            classes.push_back(qj::encode(f));
        rep.data["classes"] = classes;
        rep.data["h"] = forms.size();
        rep.lines.push_back("h = " + std::to_string(forms.size()));
        for (std::size_t i = 0; i < forms.size(); ++i)
            rep.lines.push_back("  [" + std::to_string(i) + "] " + text(forms[i]));
        json table = json::array();
        for (const auto& f : forms) {
            json row = json::array();
            std::string line = " ";
            for (const auto& g : forms) {
                const F r = reduce_form_Q(compose(ext, f, g));
                auto pos = std::find(forms.begin(), forms.end(), r) - forms.begin();
                row.push_back(pos);
                line += " " + std::to_string(pos);
            }
            table.push_back(row);
            rep.lines.push_back(line);
        }
        rep.data["compose_table"] = table;
    } else if (cmd == "oclcheck") {
        const OclReport r = ocl_structure_Q(ext.discriminant(), req.search_bound);
        rep.data["case"] = r.case_number;
        rep.data["h"] = r.h.str();
        rep.data["ocl_order"] = r.ocl_order.str();
        rep.data["ocl_order_direct"] = r.ocl_order_direct.str();
        rep.data["H"] = r.unit_norm_signs;
        rep.data["complete"] = r.complete;
        rep.data["search_bound"] = req.search_bound;
        std::string unit;
        if (r.fundamental_unit) {
            rep.data["fundamental_unit"] = qj::encode(*r.fundamental_unit);
            rep.data["unit_norm"] = qj::encode(rel_norm(*r.fundamental_unit));
            unit = "  unit " + text(*r.fundamental_unit) + " of norm " + rel_norm(*r.fundamental_unit).to_string();
        }
        rep.lines.push_back("case " + std::to_string(r.case_number) + "  h " + r.h.str() + "  ocl_order " +
                            r.ocl_order.str() + "  (direct count " + r.ocl_order_direct.str() + ")" + unit);
        if (!r.complete) {
            rep.lines.push_back("bounded search inconclusive at --bound " + std::to_string(req.search_bound));
            throw Unknown{rep};
        }
    } else if (cmd == "tpdcheck") {
        if (req.ideal) {
            const OrientedIdeal<K> i = qj::decode_ideal<K>(load_json(*req.ideal), ext);
            json conds = json::array();
            bool agree = true;
            for (int k = 0; k < K::descriptor.real_embeddings; ++k) {
                auto c = tpd_sign_check(i, k);
                agree = agree && c.agree();
                conds.push_back({{"embedding", k},
                                 {"form_positive", c.form_positive},
                                 {"det_positive", c.det_positive},
                                 {"im_positive", c.im_positive}});
                rep.lines.push_back("sigma_" + std::to_string(k + 1) + ": form " + (c.form_positive ? "+" : "-") +
                                    "  det M " + (c.det_positive ? "+" : "-") + "  Im(beta/alpha) " +
                                    (c.im_positive ? "+" : "-"));
            }
            const bool tpd = is_tpd(phi(with_orientation(i.basis, i.eps)));
            rep.data["conditions"] = conds;
            rep.data["agree"] = agree;
            rep.data["tpd"] = tpd;
            rep.data["eps"] = qj::encode(i.eps);
            rep.lines.push_back(std::string("Phi image totally positive definite: ") + (tpd ? "yes" : "no"));
        } else {
            const F f = parse_form<K>(need(req.form, "--form"));
            const bool tpd = is_tpd(f);
            rep.data["form"] = qj::encode(f);
            rep.data["tpd"] = tpd;
            rep.lines.push_back("form " + text(f) + (tpd ? " is" : " is not") + " totally positive definite");
        }
    } else {
        raise(ErrorKind::ParseError, "unknown command '" + cmd + "'");
    }
    return rep;
}

inline std::string render(const Report& rep, Output output)
{
    if (output == Output::Json)
        return rep.data.dump(2) + "\n";
    std::string out;
    for (const auto& l : rep.lines)
        out += l + "\n";
    return out;
}

} // namespace detail

inline CliResult run(const CliRequest& req)
{
    using nlohmann::json;
    CliResult res;
    auto error_report = [&](const std::string& kind, const std::string& message) {
        json e{{"error", {{"kind", kind}, {"message", message}}}};
        res.out = req.output == Output::Json ? e.dump(2) + "\n" : "error: " + kind + ": " + message + "\n";
        res.err = kind + ": " + message + "\n";
    };
    try {
        auto tag = parse_field_tag(req.base);
        if (!tag)
            raise(ErrorKind::ParseError, "unknown base field '" + req.base + "'");
        detail::Report rep = with_field(*tag, [&](auto k) { return detail::run_in<decltype(k)>(req); });
        res.out = detail::render(rep, req.output);
        res.exit_code = 0;
    } catch (const detail::Unknown& u) {
        res.out = detail::render(u.report, req.output);
        res.err = "search bound exhausted without a certificate\n";
        res.exit_code = 3;
    } catch (const Error& e) {
        error_report(std::string(to_string(e.kind())), e.message());
        res.exit_code = e.kind() == ErrorKind::ParseError ? 1 : 2;
    } catch (const nlohmann::json::exception& e) {
        error_report("ParseError", e.what());
        res.exit_code = 1;
    }
    return res;
}

/// Parses argv into a request. Returns the CLI11 exit code on --help or
/// malformed arguments.
inline std::variant<CliRequest, CliResult> parse_args(int argc, const char* const* argv)
{
    CliRequest req;
    req.search_bound = default_bound();
    std::string format = "json";

    CLI::App app{"Quadratic forms over O_K and oriented ideal classes of K(sqrt(D))", "qfc"};
    app.add_option("command", req.command, "phi | psi | compose | identity | inverse | classtable | oclcheck | "
                                           "tpdcheck | fundcheck")
        ->required()
        ->check(CLI::IsMember(commands()));
    app.add_option("--base", req.base, "base field: q, qi, q_sqrt2, q_sqrt5, q_sqrt13")->capture_default_str();
    app.add_option("--d", req.d, "discriminant D in K, written c0+c1w");
    app.add_option("--f1", req.f1, "first form a,b,c");
    app.add_option("--f2", req.f2, "second form a,b,c");
    app.add_option("--form", req.form, "form a,b,c");
    app.add_option("--ideal", req.ideal, "oriented ideal as JSON, inline or a file path");
    app.add_option("--bound", req.search_bound, "lattice points examined per equivalence search (env QFC_BOUND)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        int code = app.exit(e, out, err);
        CliResult res;
        res.exit_code = code == 0 ? 0 : 1;
        res.out = out.str();
        res.err = err.str();
        return res;
    }
    req.output = format == "text" ? Output::Text : Output::Json;
    return req;
}

} // namespace qfc::cli
