#include "csa/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace csa {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::set<std::string>& required,
                  const std::set<std::string>& optional, const std::string& what) {
    if (!obj.is_object()) throw ParseError(what + ": expected a JSON object");
    for (const auto& key : required)
        if (!obj.contains(key)) throw ParseError(what + ": missing key '" + key + "'");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!required.count(it.key()) && !optional.count(it.key()))
            throw ParseError(what + ": unknown key '" + it.key() + "'");
    }
}

std::vector<std::string> string_list(const json& arr, const std::string& what) {
    if (!arr.is_array()) throw ParseError(what + ": expected an array");
    std::vector<std::string> out;
    for (const auto& v : arr) {
        if (!v.is_string()) throw ParseError(what + ": expected strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

StackAction parse_action(const std::string& text) {
    if (text == "pop") return {StackOp::kPop, ""};
    if (text == "stay") return {StackOp::kStay, ""};
    if (text == "down") return {StackOp::kDown, ""};
    if (text == "up") return {StackOp::kUp, ""};
    if (text.rfind("push:", 0) == 0) return {StackOp::kPush, text.substr(5)};
    throw ParseError("unknown stack instruction '" + text + "'");
}

std::string render_action(const StackAction& act) {
    if (act.op == StackOp::kPush) return "push:" + act.symbol;
    return to_string(act.op);
}

MachineClass parse_class(const std::string& text) {
    if (text == "checking") return MachineClass::kChecking;
    if (text == "non_erasing") return MachineClass::kNonErasing;
    if (text == "general_stack") return MachineClass::kGeneralStack;
    if (text == "finite") return MachineClass::kFinite;
    throw ParseError("unknown machine class '" + text + "'");
}

DeterminismMode parse_mode(const std::string& text) {
    if (text == "deterministic") return DeterminismMode::kDeterministic;
    if (text == "nondeterministic") return DeterminismMode::kNondeterministic;
    if (text == "write_deterministic") return DeterminismMode::kWriteDeterministic;
    throw ParseError("unknown determinism mode '" + text + "'");
}

}  // namespace

MachineSpec parse_machine(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    require_keys(doc,
                 {"states", "initial", "finals", "input_alphabet", "heads", "stacks", "class",
                  "determinism", "sensing", "transitions"},
                 {"write_subphases"}, "machine");

    MachineSpec spec;
    spec.states = string_list(doc["states"], "states");
    spec.initial_state = doc["initial"].get<std::string>();
    spec.final_states = string_list(doc["finals"], "finals");
    spec.input_alphabet = string_list(doc["input_alphabet"], "input_alphabet");
    spec.head_count = doc["heads"].get<int>();
    if (!doc["stacks"].is_array()) throw ParseError("stacks: expected an array of alphabets");
    for (const auto& g : doc["stacks"]) spec.stack_alphabets.push_back(string_list(g, "stacks"));
    spec.stack_count = static_cast<int>(spec.stack_alphabets.size());
    spec.machine_class = parse_class(doc["class"].get<std::string>());
    spec.determinism = parse_mode(doc["determinism"].get<std::string>());
    spec.sensing_enabled = doc["sensing"].get<bool>();
    if (doc.contains("write_subphases"))
        spec.write_subphases = doc["write_subphases"].get<std::vector<int>>();

    if (!doc["transitions"].is_array()) throw ParseError("transitions: expected an array");
    for (const auto& t : doc["transitions"]) {
        require_keys(t, {"from", "in", "stk", "sense", "to", "act", "mv"}, {}, "transition");
        Transition tr;
        tr.from = t["from"].get<std::string>();
        tr.input_guard = string_list(t["in"], "in");
        tr.stack_guard = string_list(t["stk"], "stk");
        tr.to = t["to"].get<std::string>();
        for (const auto& a : t["act"]) tr.actions.push_back(parse_action(a.get<std::string>()));
        tr.moves = t["mv"].get<std::vector<int>>();
        for (const auto& s : t["sense"]) {
            if (!s.is_array() || s.size() != 3) throw ParseError("sense: expected [i, j, outcome]");
            SenseTest st;
            st.left = s[0].get<int>();
            st.right = s[1].get<int>();
            const std::string outcome = s[2].get<std::string>();
            if (outcome == "eq") st.equal = true;
            else if (outcome == "ne") st.equal = false;
            else throw ParseError("sense outcome must be 'eq' or 'ne'");
            tr.sense.push_back(st);
        }
        spec.transitions.push_back(std::move(tr));
    }
    return spec;
}

std::string serialize_machine(const MachineSpec& spec, int indent) {
    json doc;
    doc["states"] = spec.states;
    doc["initial"] = spec.initial_state;
    doc["finals"] = spec.final_states;
    doc["input_alphabet"] = spec.input_alphabet;
    doc["heads"] = spec.head_count;
    doc["stacks"] = spec.stack_alphabets;
    doc["class"] = to_string(spec.machine_class);
    doc["determinism"] = to_string(spec.determinism);
    doc["sensing"] = spec.sensing_enabled;
    if (spec.write_subphases) doc["write_subphases"] = *spec.write_subphases;
    doc["transitions"] = json::array();
    for (const auto& tr : spec.transitions) {
        json t;
        t["from"] = tr.from;
        t["in"] = tr.input_guard;
        t["stk"] = tr.stack_guard;
        json sense = json::array();
        for (const auto& s : tr.sense)
            sense.push_back(json::array({s.left, s.right, s.equal ? "eq" : "ne"}));
        t["sense"] = sense;
        t["to"] = tr.to;
        json acts = json::array();
        for (const auto& a : tr.actions) acts.push_back(render_action(a));
        t["act"] = acts;
        t["mv"] = tr.moves;
        doc["transitions"].push_back(std::move(t));
    }
    return doc.dump(indent);
}

MachineSpec load_machine_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open machine file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_machine(buf.str());
}

void save_machine_file(const MachineSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file '" + path + "'");
    out << serialize_machine(spec) << "\n";
}

TuringMachineSpec parse_turing_machine(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    require_keys(doc, {"states", "initial", "accepting", "blank", "alphabet", "transitions"}, {},
                 "turing machine");
    TuringMachineSpec tm;
    tm.states = string_list(doc["states"], "states");
    tm.initial_state = doc["initial"].get<std::string>();
    tm.accepting_states = string_list(doc["accepting"], "accepting");
    tm.blank = doc["blank"].get<std::string>();
    tm.tape_alphabet = string_list(doc["alphabet"], "alphabet");
    for (const auto& t : doc["transitions"]) {
        require_keys(t, {"from", "read", "to", "write", "mv"}, {}, "tm transition");
        TmTransition tr;
        tr.from = t["from"].get<std::string>();
        tr.read = t["read"].get<std::string>();
        tr.to = t["to"].get<std::string>();
        tr.write = t["write"].get<std::string>();
        tr.move = t["mv"].get<int>();
        tm.transitions.push_back(std::move(tr));
    }
    return tm;
}

std::string serialize_turing_machine(const TuringMachineSpec& tm, int indent) {
    json doc;
    doc["states"] = tm.states;
    doc["initial"] = tm.initial_state;
    doc["accepting"] = tm.accepting_states;
    doc["blank"] = tm.blank;
    doc["alphabet"] = tm.tape_alphabet;
    doc["transitions"] = json::array();
    for (const auto& tr : tm.transitions) {
        json t;
        t["from"] = tr.from;
        t["read"] = tr.read;
        t["to"] = tr.to;
        t["write"] = tr.write;
        t["mv"] = tr.move;
        doc["transitions"].push_back(std::move(t));
    }
    return doc.dump(indent);
}

TuringMachineSpec load_turing_machine_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open machine file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_turing_machine(buf.str());
}

std::string serialize_trace(const std::vector<Configuration>& trace, int indent) {
    json arr = json::array();
    for (const auto& c : trace) {
        json entry;
        entry["state"] = c.state;
        entry["heads"] = c.head_positions;
        json stacks = json::array();
        for (const auto& s : c.stacks) {
            json st;
            st["content"] = s.content;
            st["cursor"] = s.cursor;
            st["phase"] = s.phase == StackPhase::kWriting ? "writing" : "reading";
            stacks.push_back(std::move(st));
        }
        entry["stacks"] = std::move(stacks);
        arr.push_back(std::move(entry));
    }
    return arr.dump(indent);
}

}  // namespace csa
