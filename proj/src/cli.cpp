#include "spectra/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "spectra/dot.hpp"
#include "spectra/parser.hpp"
#include "spectra/witness.hpp"

namespace spectra {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Usage, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

StateId find_state_or_throw(const Nplts& m, const std::string& name) {
    auto s = m.find_state(name);
    if (!s) throw Error(ErrorCode::UnknownState, "no state '" + name + "' in " + m.name());
    return *s;
}

/// --gen-tests depth=2,branching=2,grid=1:1/2 (grid values ':'-separated).
TestGenConfig parse_gen_tests(const std::string& spec, const std::vector<std::string>& alphabet) {
    TestGenConfig cfg;
    cfg.alphabet = alphabet;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        auto comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        std::string item = spec.substr(pos, comma - pos);
        pos = comma + 1;
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::Usage, "--gen-tests expects key=value, got '" + item + "'");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        if (key == "depth") cfg.max_depth = static_cast<unsigned>(std::stoul(val));
        else if (key == "branching") cfg.max_branching = static_cast<unsigned>(std::stoul(val));
        else if (key == "grid") {
            cfg.grid.clear();
            std::size_t gpos = 0;
            while (gpos <= val.size()) {
                auto colon = val.find(':', gpos);
                if (colon == std::string::npos) colon = val.size();
                cfg.grid.push_back(parse_rational(val.substr(gpos, colon - gpos)));
                gpos = colon + 1;
            }
        } else
            throw Error(ErrorCode::Usage, "--gen-tests: unknown key '" + key + "'");
    }
    return cfg;
}

TestFamily make_family(const std::vector<std::string>& test_files, const std::string& gen_spec,
                       const Nplts& m1, const Nplts& m2, std::int64_t budget_limit) {
    if (!test_files.empty()) {
        TestFamily fam;
        for (const auto& f : test_files) fam.tests.push_back(parse_test(read_file(f)));
        fam.provenance = "files";
        return fam;
    }
    // Default family over the union of both models' alphabets.
    std::vector<std::string> alphabet;
    for (const auto& a : m1.action_names()) alphabet.push_back(a);
    for (const auto& a : m2.action_names())
        if (std::find(alphabet.begin(), alphabet.end(), a) == alphabet.end())
            alphabet.push_back(a);
    std::sort(alphabet.begin(), alphabet.end());
    TestGenConfig cfg = gen_spec.empty() ? TestGenConfig{} : parse_gen_tests(gen_spec, alphabet);
    cfg.alphabet = alphabet;
    Budget budget(budget_limit);
    return generate_tests(cfg, budget);
}

void print_witness(std::ostream& out, const Witness& w) {
    out << "witness " << w.kind << "\n";
    for (const auto& line : w.lines) out << "  " << line << "\n";
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact equivalence checker and spectrum analyzer for finite acyclic NPLTS"};
    app.require_subcommand(1);

    std::string model_file, model2_file, left, right, equiv_id, gen_spec, dir;
    std::vector<std::string> test_files;
    std::string mode_name = "tree";
    std::int64_t budget_limit = Budget::default_limit();
    std::uint64_t seed = 0;
    unsigned attempts = 2000;
    std::string finer_id, coarser_id;
    GenConfig gen;

    auto add_pair_opts = [&](CLI::App* cmd) {
        cmd->add_option("--model", model_file, "model file")->required();
        cmd->add_option("--model2", model2_file, "optional second model file for --right");
        cmd->add_option("--left", left, "left state name")->required();
        cmd->add_option("--right", right, "right state name")->required();
        cmd->add_option("--tests", test_files, "test files (npt format)");
        cmd->add_option("--gen-tests", gen_spec, "depth=D,branching=B,grid=R:R:...");
        cmd->add_option("--budget", budget_limit, "enumeration budget");
        cmd->add_option("--mode", mode_name, "scheduler mode: tree|memoryless")
            ->check(CLI::IsMember({"tree", "memoryless"}));
    };

    CLI::App* check = app.add_subcommand("check", "decide one equivalence on a state pair");
    add_pair_opts(check);
    check->add_option("--equiv", equiv_id, "equivalence id (e.g. ptr, pf-dis, pb)")->required();

    CLI::App* compare = app.add_subcommand("compare", "run all 26 equivalences and check consistency");
    add_pair_opts(compare);

    CLI::App* search = app.add_subcommand("search", "search for a strictness witness");
    search->add_option("--finer", finer_id, "finer equivalence id")->required();
    search->add_option("--coarser", coarser_id, "coarser equivalence id")->required();
    search->add_option("--seed", seed, "search seed");
    search->add_option("--budget", budget_limit, "enumeration budget per decision");
    search->add_option("--attempts", attempts, "models to try");
    search->add_option("--states", gen.states, "states per generated model");
    unsigned letters = 2;
    search->add_option("--letters", letters, "alphabet size for generated models (max 26)");
    search->add_option("--gen-tests", gen_spec, "test family for testing equivalences");

    CLI::App* classify = app.add_subcommand("classify", "report the class of a model");
    classify->add_option("--model", model_file, "model file")->required();

    CLI::App* corpus = app.add_subcommand("corpus", "re-verify the witness corpus");
    corpus->add_option("--dir", dir, "directory with .wit files")->required();
    corpus->add_option("--budget", budget_limit, "enumeration budget");

    CLI::App* dot = app.add_subcommand("dot", "emit Graphviz DOT");
    dot->add_option("--model", model_file, "model file")->required();

    try {
        std::vector<const char*> argv;
        argv.push_back("spectra");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        SchedulerMode mode =
            mode_name == "memoryless" ? SchedulerMode::Memoryless : SchedulerMode::Tree;

        if (check->parsed() || compare->parsed()) {
            Nplts m1 = parse_model(read_file(model_file));
            Nplts m2 = model2_file.empty() ? parse_model(read_file(model_file))
                                           : parse_model(read_file(model2_file));
            StateId s1 = find_state_or_throw(m1, left);
            StateId s2 = find_state_or_throw(m2, right);

            if (check->parsed()) {
                auto id = equiv_from_name(equiv_id);
                if (!id) throw Error(ErrorCode::Usage, "unknown equivalence id '" + equiv_id + "'");
                // Only testing equivalences consult the family; skip the
                // generation cost for the others.
                TestFamily family;
                if (is_testing(*id) || !test_files.empty())
                    family = make_family(test_files, gen_spec, m1, m2, budget_limit);
                Budget budget(budget_limit);
                Verdict v = decide_equivalence(*id, m1, s1, m2, s2, family, budget, mode);
                out << "verdict " << equiv_id << (v.equivalent ? " equivalent" : " distinguished");
                if (is_testing(*id)) out << " (family: " << family.provenance << ")";
                out << "\n";
                if (v.witness) print_witness(out, *v.witness);
                return v.equivalent ? 0 : 1;
            }

            TestFamily family = make_family(test_files, gen_spec, m1, m2, budget_limit);
            EvalResult r = evaluate_all(m1, s1, m2, s2, family, budget_limit, mode);
            auto violations = check_consistency(r);
            out << format_report(m1.name() + ":" + left + "/" + m2.name() + ":" + right, r,
                                 violations);
            return violations.empty() ? 0 : 1;
        }

        if (search->parsed()) {
            auto fid = equiv_from_name(finer_id), cid = equiv_from_name(coarser_id);
            if (!fid || !cid) throw Error(ErrorCode::Usage, "unknown equivalence id");
            gen.seed = seed;
            if (letters < 1 || letters > 26)
                throw Error(ErrorCode::Usage, "--letters must be between 1 and 26");
            gen.alphabet.clear();
            for (unsigned i = 0; i < letters; ++i)
                gen.alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
            TestGenConfig tcfg;
            tcfg.alphabet = gen.alphabet;
            if (!gen_spec.empty()) tcfg = parse_gen_tests(gen_spec, gen.alphabet);
            Budget fam_budget(budget_limit);
            TestFamily family = generate_tests(tcfg, fam_budget);
            WitnessSearchResult found =
                search_witness(*fid, *cid, gen, family, budget_limit, attempts);
            WitnessEntry w;
            w.name = std::string(equiv_name(*fid)) + "-lt-" + equiv_name(*cid);
            w.seed = found.seed;
            w.left = found.left;
            w.right = found.right;
            w.equiv = {*cid};
            w.dist = {*fid};
            w.tests = tcfg;
            w.model = std::move(found.model);
            out << serialize_witness(w);
            return 0;
        }

        if (classify->parsed()) {
            Nplts m = parse_model(read_file(model_file));
            ModelClass c = m.classify();
            out << "model " << m.name() << " states " << m.num_states() << " depth " << c.depth
                << (c.fully_nondeterministic ? " fully-nondeterministic" : "")
                << (c.fully_probabilistic ? " fully-probabilistic" : "") << "\n";
            return 0;
        }

        if (corpus->parsed()) {
            CorpusReport report = verify_corpus(dir, budget_limit);
            for (const auto& line : report.lines) out << line << "\n";
            out << "corpus " << report.entries << " entries, " << report.failures << " failures\n";
            return report.failures == 0 ? 0 : 1;
        }

        if (dot->parsed()) {
            Nplts m = parse_model(read_file(model_file));
            out << model_to_dot(m);
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.is_budget() ? 3 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace spectra
