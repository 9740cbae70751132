#include "spectra/parser.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "spectra/testing.hpp"

namespace spectra {

namespace {

std::int64_t parse_int(const std::string& tok, const std::string& where) {
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size())
        throw Error(ErrorCode::ParseError, where + ": bad integer '" + tok + "'");
    return v;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

bool valid_name(const std::string& s) {
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' && c != '-' &&
            c != '(' && c != ')' && c != ',')
            return false;
    return !s.empty();
}

/// Header name, for constructing the builder before the body is parsed.
std::string header_name(const std::string& text, const std::string& header) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == header && toks.size() == 2 && valid_name(toks[1])) return toks[1];
        break;
    }
    throw Error(ErrorCode::ParseError, "expected '" + header + " NAME' header");
}

/// Parses the shared body (alphabet/trans lines) into the builder; returns
/// the value of the "root" line if one appeared.
std::string parse_body(const std::string& text, const std::string& header, NpltsBuilder& b,
                       bool allow_root) {
    std::istringstream in(text);
    std::string line, root;
    bool saw_header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        std::string where = "line " + std::to_string(lineno);
        if (!saw_header) {
            if (toks[0] != header || toks.size() != 2 || !valid_name(toks[1]))
                throw Error(ErrorCode::ParseError,
                            where + ": expected '" + header + " NAME' header");
            saw_header = true;
            continue;
        }
        if (toks[0] == "alphabet") {
            if (toks.size() < 2) throw Error(ErrorCode::ParseError, where + ": empty alphabet");
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (!valid_name(toks[i]))
                    throw Error(ErrorCode::ParseError, where + ": bad action '" + toks[i] + "'");
                b.declare_action(toks[i]);
            }
        } else if (toks[0] == "root" && allow_root) {
            if (toks.size() != 2 || !valid_name(toks[1]))
                throw Error(ErrorCode::ParseError, where + ": expected 'root STATE'");
            root = toks[1];
        } else if (toks[0] == "trans") {
            // trans STATE LABEL -> STATE:RAT, STATE:RAT ...
            if (toks.size() < 5 || toks[3] != "->")
                throw Error(ErrorCode::ParseError,
                            where + ": expected 'trans STATE LABEL -> STATE:RAT, ...'");
            std::string rest;
            for (std::size_t i = 4; i < toks.size(); ++i) rest += toks[i];
            std::vector<std::string> entries;
            for (std::size_t pos = 0; pos <= rest.size();) {
                auto comma = rest.find(',', pos);
                if (comma == std::string::npos) comma = rest.size();
                entries.push_back(rest.substr(pos, comma - pos));
                pos = comma + 1;
            }
            std::vector<std::pair<std::string, Rational>> dist;
            for (const std::string& entry : entries) {
                if (entry.empty()) continue;
                auto colon = entry.rfind(':');
                if (colon == std::string::npos || colon == 0 || colon + 1 == entry.size())
                    throw Error(ErrorCode::ParseError,
                                where + ": expected STATE:RATIONAL, got '" + entry + "'");
                std::string target = entry.substr(0, colon);
                if (!valid_name(target))
                    throw Error(ErrorCode::ParseError, where + ": bad state '" + target + "'");
                dist.emplace_back(target, parse_rational(entry.substr(colon + 1)));
            }
            if (dist.empty())
                throw Error(ErrorCode::ParseError, where + ": transition with empty distribution");
            if (!valid_name(toks[1]) || !valid_name(toks[2]))
                throw Error(ErrorCode::ParseError, where + ": bad state or label name");
            b.add_transition(toks[1], toks[2], dist);
        } else {
            throw Error(ErrorCode::ParseError, where + ": unknown directive '" + toks[0] + "'");
        }
    }
    if (!saw_header)
        throw Error(ErrorCode::ParseError, "missing '" + header + " NAME' header");
    return root;
}

} // namespace

Rational parse_rational(const std::string& token) {
    if (token.find('.') != std::string::npos)
        throw Error(ErrorCode::ParseError,
                    "decimal probabilities are not accepted, use INT/INT: '" + token + "'");
    auto slash = token.find('/');
    if (slash == std::string::npos) return Rational(parse_int(token, "rational"));
    std::int64_t num = parse_int(token.substr(0, slash), "rational");
    std::int64_t den = parse_int(token.substr(slash + 1), "rational");
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + token + "'");
    return Rational(num, den);
}

Nplts parse_model(const std::string& text) {
    NpltsBuilder b(header_name(text, "nplts"));
    parse_body(text, "nplts", b, false);
    return std::move(b).build();
}

Npt parse_test(const std::string& text) {
    NpltsBuilder b(header_name(text, "npt"));
    std::string root = parse_body(text, "npt", b, true);
    if (root.empty()) throw Error(ErrorCode::ParseError, "npt requires a 'root STATE' line");
    b.declare_state("omega");
    Npt t;
    t.model = std::move(b).build();
    t.omega = *t.model.find_state("omega");
    auto r = t.model.find_state(root);
    if (!r) throw Error(ErrorCode::UnknownState, "root state '" + root + "' does not occur");
    t.root = *r;
    if (!t.model.deadlocked(t.omega))
        throw Error(ErrorCode::ParseError, "success state omega must have no transitions");
    return t;
}

namespace {

std::string serialize_body(const Nplts& m, const char* header) {
    std::ostringstream out;
    out << header << ' ' << m.name() << '\n';
    out << "alphabet";
    for (const auto& a : m.action_names()) out << ' ' << a;
    out << '\n';
    for (StateId s = 0; s < m.num_states(); ++s)
        for (const Transition& t : m.outgoing(s)) {
            out << "trans " << m.state_name(s) << ' ' << m.action_name(t.label) << " ->";
            bool first = true;
            for (const auto& [target, p] : t.target.entries) {
                out << (first ? " " : ", ") << m.state_name(target) << ':' << p.str();
                first = false;
            }
            out << '\n';
        }
    return std::move(out).str();
}

} // namespace

std::string serialize_model(const Nplts& m) { return serialize_body(m, "nplts"); }

std::string serialize_test(const Npt& t) {
    std::string out = serialize_body(t.model, "npt");
    out += "root " + t.model.state_name(t.root) + "\n";
    return out;
}

} // namespace spectra
