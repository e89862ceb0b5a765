#include "weakreal/json_io.hpp"

#include <cctype>
#include <stdexcept>

namespace weakreal {

namespace {

json rational_json(const Rational& r) { return json::array({r.numerator(), r.denominator()}); }

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

/// "4/3", "-2", "1" -> Rational. Throws std::invalid_argument.
Rational parse_rational(const std::string& text) {
    std::string s = strip(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s));
        long long num = std::stoll(s.substr(0, slash));
        long long den = std::stoll(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + text);
    }
}

}  // namespace

json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument("complex number must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Ket& k) {
    json space = json::array();
    for (const auto& part : k.space().parts())
        space.push_back({{"id", part.id}, {"states", part.states}});
    json amps = json::array();
    for (int i = 0; i < k.dim(); ++i) amps.push_back(to_json(k.amplitudes()(i)));
    return {{"space", space}, {"amplitudes", amps}};
}

Ket ket_from_json(const json& j) {
    if (!j.contains("space") || !j.contains("amplitudes"))
        throw std::invalid_argument("ket JSON needs 'space' and 'amplitudes'");
    std::vector<Subsystem> parts;
    for (const auto& part : j.at("space")) {
        Subsystem sub;
        sub.id = part.at("id").get<std::string>();
        sub.states = part.at("states").get<std::vector<std::string>>();
        parts.push_back(std::move(sub));
    }
    ProductSpace space(parts);
    const json& amps = j.at("amplitudes");
    if (static_cast<int>(amps.size()) != space.dim())
        throw std::invalid_argument("amplitude count does not match space dimension");
    Vector v(space.dim());
    for (int i = 0; i < space.dim(); ++i) v(i) = cplx_from_json(amps[static_cast<std::size_t>(i)]);
    return Ket(space, std::move(v));
}

json to_json(const HermitianOperator& op) {
    json rows = json::array();
    for (int r = 0; r < op.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < op.dim(); ++c) row.push_back(to_json(op.matrix()(r, c)));
        rows.push_back(std::move(row));
    }
    return {{"matrix", rows}};
}

HermitianOperator operator_from_json(const json& j) {
    const json& rows = j.contains("matrix") ? j.at("matrix") : j;
    if (!rows.is_array() || rows.empty())
        throw std::invalid_argument("observable JSON needs a nonempty 'matrix'");
    const int d = static_cast<int>(rows.size());
    Matrix m(d, d);
    for (int r = 0; r < d; ++r) {
        const json& row = rows[static_cast<std::size_t>(r)];
        if (static_cast<int>(row.size()) != d)
            throw std::invalid_argument("observable matrix must be square");
        for (int c = 0; c < d; ++c) m(r, c) = cplx_from_json(row[static_cast<std::size_t>(c)]);
    }
    return HermitianOperator(std::move(m));
}

json to_json(const WeakValueReport& report) {
    json wv = json::array();
    for (const auto& w : report.weak_values) wv.push_back(to_json(w));
    return {{"basis", report.basis},
            {"basis_id", report.basis_id},
            {"weak_values", wv},
            {"sum_check", to_json(report.sum())}};
}

json to_json(const UpsideDownState& rho) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < rho.matrix.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < rho.matrix.cols(); ++c)
            row.push_back(to_json(rho.matrix(r, c)));
        rows.push_back(std::move(row));
    }
    return {{"matrix", rows}};
}

json to_json(const ParadoxCertificate& cert) {
    json assertions = json::array();
    for (const auto& a : cert.assertions)
        assertions.push_back(
            {{"support", a.support}, {"basis", json::array({a.support, a.complement})}});
    return {{"assertions", assertions}, {"conflict", cert.conflict_witness}};
}

json to_json(const StructureSet& set) {
    json structures = json::array();
    for (const auto& s : set.structures) {
        json vertices = json::array();
        for (const auto& [id, state] : s.vertices) vertices.push_back(json::array({id, state}));
        json edges = json::array();
        for (const auto& [a, b] : s.edges) edges.push_back(json::array({a, b}));
        structures.push_back({{"vertices", vertices},
                              {"multiplicity", to_json(s.multiplicity)},
                              {"edges", edges}});
    }
    return {{"structures", structures}};
}

json to_json(const QSqrt2& q) {
    return {{"a", rational_json(q.a)}, {"b", rational_json(q.b)}, {"value", q.value()}};
}

json to_json(const Decomposition& dec) {
    json rows = json::array();
    for (const auto& row : dec.support) {
        json config = json::array();
        for (const auto& g : row.config) config.push_back(json::array({g.re, g.im}));
        json p = row.probability.is_rational() ? rational_json(row.probability.a)
                                               : to_json(row.probability);
        rows.push_back({{"probability", p}, {"config", config}});
    }
    return {{"support", rows}, {"expected_count", to_json(dec.expected_count())}};
}

json to_json(const CardinalJointTable& table) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        json config = json::array();
        for (const auto& g : row.config) config.push_back(json::array({g.re, g.im}));
        json p = row.probability.is_rational() ? rational_json(row.probability.a)
                                               : to_json(row.probability);
        rows.push_back({{"probability", p}, {"config", config}});
    }
    return {{"axis_dims", table.axis_dims}, {"rows", rows}};
}

json to_json(const ScenarioReport& report) {
    json bases = json::array();
    for (const auto& basis : report.bases) {
        json wv = json::array();
        for (const auto& w : basis.weak_values) wv.push_back(to_json(w));
        bases.push_back({{"id", basis.id},
                         {"labels", basis.labels},
                         {"weak_values", wv},
                         {"abl", basis.abl}});
    }
    json fixtures = json::array();
    for (const auto& f : report.fixtures)
        fixtures.push_back({{"description", f.description},
                            {"expected", to_json(f.expected)},
                            {"actual", to_json(f.actual)},
                            {"pass", f.pass}});
    json out = {{"name", report.name},
                {"params", report.params},
                {"notes", report.notes},
                {"bases", bases},
                {"fixtures", fixtures},
                {"paradox_expected", report.paradox_expected},
                {"all_pass", report.all_pass()}};
    out["certificate"] = report.certificate ? to_json(*report.certificate) : json();
    out["structures"] = report.structures ? to_json(*report.structures) : json();
    return out;
}

json to_json(const PointerState& ps) {
    json terms = json::array();
    for (const auto& t : ps.terms)
        terms.push_back({{"coefficient", to_json(t.coefficient)}, {"center", t.center}});
    return {{"terms", terms}, {"width", ps.width}, {"normalized", ps.normalized}};
}

CSqrt2 parse_rational_complex(const std::string& text) {
    std::string s = strip(text);
    if (s.empty()) throw std::invalid_argument("empty complex literal");

    // split into one or two signed terms
    std::vector<std::string> terms;
    std::size_t start = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/' && s[i - 1] != '+' &&
            s[i - 1] != '-') {
            terms.push_back(s.substr(start, i - start));
            start = i;
        }
    }
    terms.push_back(s.substr(start));
    if (terms.size() > 2) throw std::invalid_argument("bad complex literal: " + text);

    Rational re(0), im(0);
    for (std::string term : terms) {
        term = strip(term);
        bool imaginary = term.find('i') != std::string::npos;
        if (imaginary) {
            std::string digits;
            for (char c : term)
                if (c != 'i') digits += c;
            digits = strip(digits);
            // forms: "i", "-i", "i/2", "3i/2", "-2i"
            if (digits.empty() || digits == "+") {
                im += Rational(1);
            } else if (digits == "-") {
                im += Rational(-1);
            } else {
                // "i/2" and "-i/2" leave a bare "/2"; restore the unit
                std::size_t pos = (digits[0] == '+' || digits[0] == '-') ? 1 : 0;
                if (pos < digits.size() && digits[pos] == '/') digits.insert(pos, "1");
                im += parse_rational(digits);
            }
        } else {
            re += parse_rational(term);
        }
    }
    return CSqrt2(QSqrt2(re), QSqrt2(im));
}

std::vector<CSqrt2> parse_rational_vector(const std::string& text) {
    std::string s = strip(text);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
    std::vector<CSqrt2> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string entry = comma == std::string::npos ? s.substr(start)
                                                       : s.substr(start, comma - start);
        out.push_back(parse_rational_complex(entry));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty vector literal");
    return out;
}

}  // namespace weakreal
