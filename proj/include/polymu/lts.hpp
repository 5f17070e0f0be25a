// ============================================================================
//  polymu/lts.hpp - finite labelled transition systems
//
//  States are dense integers 0..n-1; actions and propositions are strings.
//  An optional display-name table travels with the system for debugging and
//  is ignored by equality (it is emitted as comments by serialize).
//
//  Text format (line based, '#' starts a comment, tokens whitespace-split):
//
//      states <n>
//      init <id>
//      label <id> <prop>*          one line per state, optional
//      trans <src> <act> <dst>     repeatable
// ============================================================================
#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "formula.hpp"

namespace polymu {

struct lts_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Lts {
public:
    Lts() = default;
    explicit Lts(int n, int init = 0) : n_(n), init_(init), labels_(n) {
        if (n < 1) throw lts_error("a transition system needs at least one state");
        check_state(init);
    }

    int state_count() const { return n_; }
    int initial() const { return init_; }

    void set_initial(int s) {
        check_state(s);
        init_ = s;
    }

    void add_label(int s, const std::string& prop) {
        check_state(s);
        check_prop_name(prop);
        auto& ls = labels_[s];
        auto it = std::lower_bound(ls.begin(), ls.end(), prop);
        if (it == ls.end() || *it != prop) ls.insert(it, prop);
    }

    void add_transition(int src, const std::string& act, int dst) {
        check_state(src);
        check_state(dst);
        if (act.empty() || !std::isalpha(static_cast<unsigned char>(act[0])))
            throw lts_error("action name must start with a letter: '" + act + "'");
        auto& per_state = adj_[act];
        if (per_state.empty()) per_state.resize(n_);
        auto& succ = per_state[src];
        auto it = std::lower_bound(succ.begin(), succ.end(), dst);
        if (it == succ.end() || *it != dst) succ.insert(it, dst);
    }

    bool has_prop(int s, const std::string& prop) const {
        check_state(s);
        const auto& ls = labels_[s];
        return std::binary_search(ls.begin(), ls.end(), prop);
    }

    const std::vector<std::string>& labels_of(int s) const {
        check_state(s);
        return labels_[s];
    }

    // Sorted a-successors of s; empty for actions the system never uses.
    const std::vector<int>& successors(int s, const std::string& act) const {
        check_state(s);
        auto it = adj_.find(act);
        if (it == adj_.end()) {
            static const std::vector<int> none;
            return none;
        }
        return it->second[s];
    }

    bool has_edge(int src, const std::string& act, int dst) const {
        const auto& succ = successors(src, act);
        return std::binary_search(succ.begin(), succ.end(), dst);
    }

    std::vector<std::string> actions() const {
        std::vector<std::string> out;
        for (const auto& [act, per_state] : adj_) out.push_back(act);
        return out;
    }

    std::vector<std::string> propositions() const {
        std::vector<std::string> out;
        for (const auto& ls : labels_)
            out.insert(out.end(), ls.begin(), ls.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::size_t transition_count() const {
        std::size_t total = 0;
        for (const auto& [act, per_state] : adj_)
            for (const auto& succ : per_state) total += succ.size();
        return total;
    }

    // Display names, purely cosmetic.
    void set_name(int s, std::string name) {
        check_state(s);
        if (names_.empty()) names_.resize(n_);
        names_[s] = std::move(name);
    }

    const std::string& name_of(int s) const {
        check_state(s);
        static const std::string empty;
        return names_.empty() ? empty : names_[s];
    }

    bool operator==(const Lts& o) const {
        return n_ == o.n_ && init_ == o.init_ && labels_ == o.labels_ && adj_ == o.adj_;
    }
    bool operator!=(const Lts& o) const { return !(*this == o); }

private:
    int n_ = 0;
    int init_ = 0;
    std::vector<std::vector<std::string>> labels_;              // sorted per state
    std::map<std::string, std::vector<std::vector<int>>> adj_;  // act -> state -> sorted successors
    std::vector<std::string> names_;

    void check_state(int s) const {
        if (s < 0 || s >= n_)
            throw lts_error("state " + std::to_string(s) + " is not declared (states " +
                            std::to_string(n_) + ")");
    }
};

// ── Text format ─────────────────────────────────────────────────────────────

inline Lts parse_lts(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool have_states = false, have_init = false;
    Lts lts;
    int pending_init = 0;

    auto bad = [&lineno](const std::string& msg) -> lts_error {
        return lts_error("line " + std::to_string(lineno) + ": " + msg);
    };
    auto to_int = [&bad](const std::string& tok) {
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw bad("expected a number, got '" + tok + "'");
        }
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        const std::string& kw = tok[0];
        if (kw == "states") {
            if (have_states) throw bad("duplicate 'states' line");
            if (tok.size() != 2) throw bad("usage: states <n>");
            int n = to_int(tok[1]);
            if (n < 1) throw bad("need at least one state");
            lts = Lts(n);
            have_states = true;
        } else if (!have_states) {
            throw bad("'states <n>' must come first");
        } else if (kw == "init") {
            if (have_init) throw bad("duplicate 'init' line");
            if (tok.size() != 2) throw bad("usage: init <id>");
            pending_init = to_int(tok[1]);
            have_init = true;
        } else if (kw == "label") {
            if (tok.size() < 2) throw bad("usage: label <id> <prop>*");
            int s = to_int(tok[1]);
            for (std::size_t i = 2; i < tok.size(); ++i) {
                try {
                    lts.add_label(s, tok[i]);
                } catch (const std::exception& e) {
                    throw bad(e.what());
                }
            }
            if (tok.size() == 2) {
                try {
                    lts.labels_of(s);  // still validate the state id
                } catch (const std::exception& e) {
                    throw bad(e.what());
                }
            }
        } else if (kw == "trans") {
            if (tok.size() != 4) throw bad("usage: trans <src> <act> <dst>");
            try {
                lts.add_transition(to_int(tok[1]), tok[2], to_int(tok[3]));
            } catch (const lts_error& e) {
                throw bad(e.what());
            }
        } else {
            throw bad("unknown directive '" + kw + "'");
        }
    }
    if (!have_states) throw lts_error("missing 'states' line");
    if (!have_init) throw lts_error("missing 'init' line");
    try {
        lts.set_initial(pending_init);
    } catch (const lts_error& e) {
        throw lts_error(std::string("init: ") + e.what());
    }
    return lts;
}

inline Lts parse_lts(const std::string& text) {
    std::istringstream in(text);
    return parse_lts(in);
}

inline void serialize(const Lts& lts, std::ostream& os) {
    os << "states " << lts.state_count() << '\n';
    os << "init " << lts.initial() << '\n';
    for (int s = 0; s < lts.state_count(); ++s)
        if (!lts.name_of(s).empty()) os << "# " << s << ": " << lts.name_of(s) << '\n';
    for (int s = 0; s < lts.state_count(); ++s) {
        const auto& ls = lts.labels_of(s);
        if (ls.empty()) continue;
        os << "label " << s;
        for (const auto& p : ls) os << ' ' << p;
        os << '\n';
    }
    for (const auto& act : lts.actions())
        for (int s = 0; s < lts.state_count(); ++s)
            for (int t : lts.successors(s, act))
                os << "trans " << s << ' ' << act << ' ' << t << '\n';
}

inline std::string serialize(const Lts& lts) {
    std::ostringstream os;
    serialize(lts, os);
    return os.str();
}

}  // namespace polymu
