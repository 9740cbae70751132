#include "spectra/witness.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spectra/parser.hpp"

namespace spectra {

namespace {

std::vector<EquivalenceId> parse_ids(const std::vector<std::string>& toks, std::size_t from,
                                     const std::string& where) {
    std::vector<EquivalenceId> out;
    for (std::size_t i = from; i < toks.size(); ++i) {
        auto id = equiv_from_name(toks[i]);
        if (!id)
            throw Error(ErrorCode::ParseError,
                        where + ": unknown equivalence id '" + toks[i] + "'");
        out.push_back(*id);
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto next = s.find(sep, pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

} // namespace

WitnessEntry parse_witness(const std::string& text) {
    WitnessEntry w;
    std::istringstream in(text);
    std::string line, model_text;
    std::vector<std::string> test_texts;
    bool in_model = false, saw_header = false;
    int lineno = 0;
    auto first_token = [](const std::string& l) {
        std::istringstream s(l);
        std::string t;
        s >> t;
        return t;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (in_model) {
            if (first_token(line) == "npt")
                test_texts.emplace_back();
            if (test_texts.empty())
                model_text += line + "\n";
            else
                test_texts.back() += line + "\n";
            continue;
        }
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string tok;
        while (ls >> tok) {
            if (tok[0] == '#') break;
            toks.push_back(tok);
        }
        if (toks.empty()) continue;
        std::string where = "line " + std::to_string(lineno);
        if (!saw_header) {
            if (toks[0] != "witness" || toks.size() != 2)
                throw Error(ErrorCode::ParseError, where + ": expected 'witness NAME' header");
            w.name = toks[1];
            saw_header = true;
        } else if (toks[0] == "theorem") {
            for (std::size_t i = 1; i < toks.size(); ++i)
                w.theorem += (i > 1 ? " " : "") + toks[i];
        } else if (toks[0] == "seed" && toks.size() == 2) {
            w.seed = std::stoull(toks[1]);
        } else if (toks[0] == "left" && toks.size() == 2) {
            w.left = toks[1];
        } else if (toks[0] == "right" && toks.size() == 2) {
            w.right = toks[1];
        } else if (toks[0] == "equiv") {
            w.equiv = parse_ids(toks, 1, where);
        } else if (toks[0] == "dist") {
            w.dist = parse_ids(toks, 1, where);
        } else if (toks[0] == "gentests") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                auto eq = toks[i].find('=');
                if (eq == std::string::npos)
                    throw Error(ErrorCode::ParseError, where + ": expected key=value");
                std::string key = toks[i].substr(0, eq), val = toks[i].substr(eq + 1);
                if (key == "depth") w.tests.max_depth = static_cast<unsigned>(std::stoul(val));
                else if (key == "branching")
                    w.tests.max_branching = static_cast<unsigned>(std::stoul(val));
                else if (key == "grid") {
                    w.tests.grid.clear();
                    for (const std::string& g : split(val, ','))
                        w.tests.grid.push_back(parse_rational(g));
                } else
                    throw Error(ErrorCode::ParseError, where + ": unknown key '" + key + "'");
            }
        } else if (toks[0] == "nplts") {
            in_model = true;
            model_text = line + "\n";
        } else {
            throw Error(ErrorCode::ParseError, where + ": unknown directive '" + toks[0] + "'");
        }
    }
    if (!saw_header) throw Error(ErrorCode::ParseError, "missing 'witness NAME' header");
    if (!in_model) throw Error(ErrorCode::ParseError, "witness has no embedded model");
    if (w.left.empty() || w.right.empty())
        throw Error(ErrorCode::ParseError, "witness needs 'left' and 'right' states");
    w.model = parse_model(model_text);
    if (!w.model.find_state(w.left) || !w.model.find_state(w.right))
        throw Error(ErrorCode::UnknownState, "witness states not in the embedded model");
    for (const std::string& t : test_texts) w.npts.push_back(parse_test(t));
    if (w.tests.alphabet.empty()) w.tests.alphabet = w.model.action_names();
    return w;
}

std::string serialize_witness(const WitnessEntry& w) {
    std::string out = "witness " + w.name + "\n";
    if (!w.theorem.empty()) out += "theorem " + w.theorem + "\n";
    out += "seed " + std::to_string(w.seed) + "\n";
    out += "left " + w.left + "\nright " + w.right + "\n";
    auto ids = [](const std::vector<EquivalenceId>& v) {
        std::string s;
        for (EquivalenceId id : v) s += std::string(" ") + equiv_name(id);
        return s;
    };
    if (!w.equiv.empty()) out += "equiv" + ids(w.equiv) + "\n";
    if (!w.dist.empty()) out += "dist" + ids(w.dist) + "\n";
    out += "gentests depth=" + std::to_string(w.tests.max_depth) +
           " branching=" + std::to_string(w.tests.max_branching) + " grid=";
    for (std::size_t i = 0; i < w.tests.grid.size(); ++i)
        out += (i ? "," : "") + w.tests.grid[i].str();
    out += "\n" + serialize_model(w.model);
    for (const Npt& t : w.npts) out += serialize_test(t);
    return out;
}

CorpusReport verify_corpus(const std::string& dir, std::int64_t budget_limit) {
    namespace fs = std::filesystem;
    CorpusReport report;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".wit")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        report.lines.push_back("no .wit files in " + dir);
        report.failures = 1;
        return report;
    }
    for (const auto& path : files) {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        WitnessEntry w;
        try {
            w = parse_witness(buf.str());
        } catch (const Error& e) {
            report.entries++;
            report.failures++;
            report.lines.push_back("witness " + path.filename().string() + " FAIL parse: " +
                                   e.what());
            continue;
        }
        report.entries++;
        StateId left = *w.model.find_state(w.left);
        StateId right = *w.model.find_state(w.right);
        std::vector<std::string> bad;
        try {
            TestFamily family;
            if (!w.npts.empty()) {
                family.tests = w.npts;
                family.provenance = "embedded";
            } else {
                Budget fam_budget(budget_limit);
                family = generate_tests(w.tests, fam_budget);
            }
            auto run = [&](EquivalenceId id, bool want_equiv) {
                Budget budget(budget_limit);
                Verdict v =
                    decide_equivalence(id, w.model, left, w.model, right, family, budget);
                if (v.equivalent != want_equiv)
                    bad.push_back(std::string(equiv_name(id)) + " expected " +
                                  (want_equiv ? "equivalent" : "distinguished"));
            };
            for (EquivalenceId id : w.equiv) run(id, true);
            for (EquivalenceId id : w.dist) run(id, false);
        } catch (const Error& e) {
            bad.push_back(std::string("error: ") + e.what());
        }
        if (bad.empty()) {
            report.lines.push_back("witness " + w.name + " ok");
        } else {
            report.failures++;
            std::string line = "witness " + w.name + " FAIL";
            for (const auto& b : bad) line += " [" + b + "]";
            report.lines.push_back(line);
        }
    }
    return report;
}

} // namespace spectra
