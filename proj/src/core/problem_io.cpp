#include "core/problem_io.hpp"

#include "core/error.hpp"
#include "core/expression.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace dnodal {

namespace {

using nlohmann::json;

struct Position {
    int line = 0;
    int column = 0;
};

Position position_of(std::string_view text, std::size_t offset) {
    Position p{1, 1};
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++p.line;
            p.column = 1;
        } else {
            ++p.column;
        }
    }
    return p;
}

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        // Point at the key in the document when it can be located.
        const auto pos = locate("\"" + last_segment(key) + "\"");
        throw ParseError(key + ": " + msg, pos.line, pos.column);
    }

    Expression expression(const json& node, const std::string& key,
                          const std::vector<std::string>& vars) const {
        if (node.is_number()) return Expression::constant(node.get<double>());
        if (!node.is_string()) fail(key, "expected a number or an expression string");
        const auto src = node.get<std::string>();
        try {
            return Expression::parse(src, vars);
        } catch (const ParseError& e) {
            auto pos = locate("\"" + src + "\"");
            if (pos.line > 0) pos.column += e.column();  // skip the opening quote
            throw ParseError(key + ": " + strip_position(e.what()), pos.line,
                             pos.line > 0 ? pos.column : e.column());
        }
    }

    double number(const json& node, const std::string& key) const {
        const auto e = expression(node, key, {});
        return e.evaluate({});
    }

private:
    Position locate(const std::string& needle) const {
        const auto at = text_.find(needle);
        if (at == std::string_view::npos) return {};
        return position_of(text_, at);
    }

    static std::string last_segment(const std::string& key) {
        const auto dot = key.rfind('.');
        return dot == std::string::npos ? key : key.substr(dot + 1);
    }

    static std::string strip_position(const std::string& what) {
        const auto paren = what.rfind(" (");
        return paren == std::string::npos ? what : what.substr(0, paren);
    }

    std::string_view text_;
};

void reject_unknown(const Reader& r, const json& obj, const std::string& prefix,
                    std::initializer_list<const char*> allowed) {
    for (const auto& [k, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) r.fail(prefix.empty() ? k : prefix + "." + k, "unknown key");
    }
}

KernelEntry read_kernel(const Reader& r, const json& node, const std::string& key) {
    static const std::vector<std::string> xt = {"x", "t"};
    static const std::vector<std::string> x_only = {"x"};
    static const std::vector<std::string> t_only = {"t"};
    if (node.is_object()) {
        reject_unknown(r, node, key, {"separable"});
        if (!node.contains("separable") || !node["separable"].is_array())
            r.fail(key, "expected {\"separable\": [{\"x\": ..., \"t\": ...}, ...]}");
        std::vector<SeparableTerm> terms;
        for (std::size_t i = 0; i < node["separable"].size(); ++i) {
            const auto& term = node["separable"][i];
            const auto tkey = key + ".separable[" + std::to_string(i) + "]";
            if (!term.is_object() || !term.contains("x") || !term.contains("t"))
                r.fail(tkey, "expected an object with keys x and t");
            auto a = r.expression(term["x"], tkey + ".x", x_only);
            auto b = r.expression(term["t"], tkey + ".t", t_only);
            terms.push_back({[a](double x) { return a(x); }, [b](double t) { return b(t); }});
        }
        return KernelEntry::separable(std::move(terms));
    }
    auto e = r.expression(node, key, xt);
    if (e.is_constant() && e.evaluate(std::vector<double>{0.0, 0.0}) == 0.0) return {};
    return KernelEntry::general([e](double x, double t) { return e(x, t); });
}

}  // namespace

ProblemData parse_problem(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto pos = position_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(std::string("malformed problem document: ") + e.what(), pos.line, pos.column);
    }
    const Reader r(text);
    if (!doc.is_object()) r.fail("document", "expected a JSON object");
    reject_unknown(r, doc, "", {"bc", "coeffs", "quadrature_points"});

    ProblemData data;
    if (doc.contains("bc")) {
        const auto& bc = doc["bc"];
        if (!bc.is_object()) r.fail("bc", "expected an object");
        reject_unknown(r, bc, "bc", {"theta", "beta", "b1", "b2", "d1", "d2"});
        const auto read = [&](const char* name, double& out) {
            if (bc.contains(name)) out = r.number(bc[name], std::string("bc.") + name);
        };
        read("theta", data.bc.theta);
        read("beta", data.bc.beta);
        read("b1", data.bc.b1);
        read("b2", data.bc.b2);
        read("d1", data.bc.d1);
        read("d2", data.bc.d2);
    }
    if (!doc.contains("coeffs")) r.fail("coeffs", "missing");
    const auto& co = doc["coeffs"];
    if (!co.is_object()) r.fail("coeffs", "expected an object");
    reject_unknown(r, co, "coeffs", {"V", "m", "chi"});
    if (!co.contains("V")) r.fail("coeffs.V", "missing");
    {
        auto v = r.expression(co["V"], "coeffs.V", {"x"});
        data.coeffs.V = [v](double x) { return v(x); };
    }
    if (co.contains("m")) data.coeffs.m = r.number(co["m"], "coeffs.m");
    if (co.contains("chi")) {
        const auto& chi = co["chi"];
        if (!chi.is_object()) r.fail("coeffs.chi", "expected an object");
        reject_unknown(r, chi, "coeffs.chi", {"11", "12", "21", "22"});
        const char* keys[] = {"11", "12", "21", "22"};
        for (std::size_t i = 0; i < 4; ++i) {
            if (chi.contains(keys[i]))
                data.coeffs.chi[i] = read_kernel(r, chi[keys[i]], std::string("coeffs.chi.") + keys[i]);
        }
    }
    if (doc.contains("quadrature_points")) {
        const auto& q = doc["quadrature_points"];
        if (!q.is_number_integer() || q.get<long long>() < 2)
            r.fail("quadrature_points", "expected an integer >= 2");
        data.quadrature_points = q.get<int>();
    }
    return data;
}

ProblemData load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open problem file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

}  // namespace dnodal
