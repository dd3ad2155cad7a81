#include "pbrs/types.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace pbrs {

const char* to_string(TerminationKind k) {
    switch (k) {
        case TerminationKind::NonTerminal: return "nonterminal";
        case TerminationKind::Terminal: return "terminal";
        case TerminationKind::Truncated: return "truncated";
    }
    return "unknown";
}

TerminationKind termination_kind_from_string(const std::string& s) {
    if (s == "nonterminal") return TerminationKind::NonTerminal;
    if (s == "terminal") return TerminationKind::Terminal;
    if (s == "truncated") return TerminationKind::Truncated;
    throw std::invalid_argument("unknown termination kind: " + s);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string state_to_field(const State& s) {
    if (s.is_tabular()) return std::to_string(s.index);
    std::string out;
    for (std::size_t i = 0; i < s.features.size(); ++i) {
        if (i) out += ';';
        out += format_double(s.features[i]);
    }
    return out;
}

State state_from_field(const std::string& field) {
    if (field.find(';') == std::string::npos &&
        field.find('.') == std::string::npos &&
        field.find('e') == std::string::npos &&
        field.find("inf") == std::string::npos &&
        field.find("nan") == std::string::npos) {
        return State::tabular(std::stoi(field));
    }
    std::vector<double> feats;
    std::stringstream ss(field);
    std::string part;
    while (std::getline(ss, part, ';')) feats.push_back(std::stod(part));
    return State::continuous(std::move(feats));
}

void write_transition_csv(std::ostream& out, const std::vector<Transition>& log) {
    out << "step,s,a,s_next,r,kind\n";
    long step = 0;
    for (const Transition& t : log) {
        out << step++ << ',' << state_to_field(t.s) << ',' << t.a << ','
            << state_to_field(t.s_next) << ',' << format_double(t.r) << ','
            << to_string(t.kind) << '\n';
    }
}

std::vector<Transition> read_transition_csv(std::istream& in) {
    std::vector<Transition> log;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::stringstream ss(line);
        std::string step, s, a, s_next, r, kind;
        std::getline(ss, step, ',');
        std::getline(ss, s, ',');
        std::getline(ss, a, ',');
        std::getline(ss, s_next, ',');
        std::getline(ss, r, ',');
        std::getline(ss, kind, ',');
        Transition t;
        t.s = state_from_field(s);
        t.a = std::stoi(a);
        t.s_next = state_from_field(s_next);
        t.r = std::stod(r);
        t.kind = termination_kind_from_string(kind);
        log.push_back(std::move(t));
    }
    return log;
}

}  // namespace pbrs
