#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbrs {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericFault : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Terminal means the environment ended the episode; Truncated means the
// step cap cut it off. The two are distinct signals everywhere: the shaped
// potential of the last state is zeroed in both cases, but learners may
// bootstrap differently.
enum class TerminationKind { NonTerminal, Terminal, Truncated };

const char* to_string(TerminationKind k);
TerminationKind termination_kind_from_string(const std::string& s);

// A state is either a tabular index or a feature vector.
struct State {
    int index = -1;
    std::vector<double> features;

    static State tabular(int i) { return State{i, {}}; }
    static State continuous(std::vector<double> f) { return State{-1, std::move(f)}; }

    bool is_tabular() const { return index >= 0; }
    bool operator==(const State&) const = default;
};

struct Transition {
    State s;
    int a = 0;
    State s_next;
    double r = 0.0;
    TerminationKind kind = TerminationKind::NonTerminal;

    bool ends_episode() const { return kind != TerminationKind::NonTerminal; }
    bool operator==(const Transition&) const = default;
};

// Transition log CSV: step,s,a,s_next,r,kind. Continuous states join their
// features with ';' inside the s / s_next fields.
std::string state_to_field(const State& s);
State state_from_field(const std::string& field);
void write_transition_csv(std::ostream& out, const std::vector<Transition>& log);
std::vector<Transition> read_transition_csv(std::istream& in);

// Floats in CSV output carry 9 significant digits.
std::string format_double(double v);

}  // namespace pbrs
