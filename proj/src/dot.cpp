#include "spectra/dot.hpp"

namespace spectra {

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string model_to_dot(const Nplts& m) {
    std::string out = "digraph " + std::string("nplts") + " {\n";
    out += "  rankdir=TB;\n  node [shape=circle];\n";
    for (StateId s = 0; s < m.num_states(); ++s)
        out += "  " + quote(m.state_name(s)) + ";\n";
    unsigned junction = 0;
    for (StateId s = 0; s < m.num_states(); ++s)
        for (const Transition& t : m.outgoing(s)) {
            if (t.target.is_dirac()) {
                out += "  " + quote(m.state_name(s)) + " -> " +
                       quote(m.state_name(t.target.entries[0].first)) + " [label=" +
                       quote(m.action_name(t.label)) + "];\n";
                continue;
            }
            std::string j = "j" + std::to_string(junction++);
            out += "  " + j + " [shape=point];\n";
            out += "  " + quote(m.state_name(s)) + " -> " + j + " [label=" +
                   quote(m.action_name(t.label)) + ", arrowhead=none];\n";
            for (const auto& [target, p] : t.target.entries)
                out += "  " + j + " -> " + quote(m.state_name(target)) + " [label=" +
                       quote(p.str()) + "];\n";
        }
    return out + "}\n";
}

std::string resolution_to_dot(const Resolution& z) {
    const TreeModel& tree = *z.tree;
    const Nplts& m = tree.model();
    std::string out = "digraph resolution {\n  node [shape=circle];\n";
    z.visit([&](NodeId n) {
        std::string id = "n" + std::to_string(n);
        std::string label = m.state_name(tree.corr(n));
        bool stopped = z.choice[n] == kStop && !tree.node(n).transitions.empty();
        out += "  " + id + " [label=" + quote(label) +
               (stopped ? ", style=dashed" : "") + "];\n";
        if (const TreeTransition* t = z.chosen(n))
            for (const auto& [child, p] : t->support)
                out += "  " + id + " -> n" + std::to_string(child) + " [label=" +
                       quote(m.action_name(t->label) + " " + p.str()) + "];\n";
    });
    return out + "}\n";
}

std::string spectrum_to_dot(const EvalResult& r) {
    std::string out = "digraph spectrum {\n  rankdir=BT;\n  node [shape=box];\n";
    for (int i = 0; i < kNumEquivalences; ++i) {
        auto id = static_cast<EquivalenceId>(i);
        const char* fill = "lightgray";
        switch (r.of(id).status) {
            case EvalOutcome::Status::Equivalent: fill = "palegreen"; break;
            case EvalOutcome::Status::Distinguished: fill = "lightcoral"; break;
            case EvalOutcome::Status::Error: fill = "lightgray"; break;
        }
        out += "  " + quote(equiv_name(id)) + " [style=filled, fillcolor=" + fill + "];\n";
    }
    for (const SpectrumEdge& e : spectrum_expectation().edges)
        out += "  " + quote(equiv_name(e.from)) + " -> " + quote(equiv_name(e.to)) +
               (e.binding == EdgeBinding::NonBinding ? " [style=dashed]" : "") + ";\n";
    return out + "}\n";
}

} // namespace spectra
