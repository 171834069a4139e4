#include "branchcov/json_io.hpp"

#include <algorithm>

#include "branchcov/errors.hpp"

namespace branchcov {

json to_json(const Partition& p) { return json(p.parts()); }

json to_json(const BranchDatum& datum) {
    json parts = json::array();
    for (const Partition& p : datum.partitions()) parts.push_back(to_json(p));
    return json{{"d", datum.degree()}, {"partitions", parts}};
}

BranchDatum datum_from_json(const json& j) {
    if (!j.contains("d") || !j.contains("partitions"))
        throw parse_error("datum JSON needs \"d\" and \"partitions\"");
    int d = j.at("d").get<int>();
    std::vector<Partition> ps;
    for (const auto& arr : j.at("partitions"))
        ps.emplace_back(arr.get<std::vector<int>>());
    return BranchDatum(d, std::move(ps));
}

json to_json(const Factorization& f) {
    json U = json::array();
    for (const Partition& p : f.U_list) U.push_back(to_json(p));
    json W = json::array();
    for (const auto& ws : f.W_list) {
        json inner = json::array();
        for (const Partition& p : ws) inner.push_back(to_json(p));
        W.push_back(inner);
    }
    return json{{"u", f.u}, {"w", f.w}, {"U", U}, {"W", W}};
}

json to_json(const BlockSystem& sys) {
    json blocks = json::array();
    for (const auto& b : sys.blocks) {
        json bj = json::array();
        for (int x : b) bj.push_back(x + 1);
        blocks.push_back(bj);
    }
    return blocks;
}

json to_json(const RealizationWitness& w) {
    json j = to_json(w.datum);
    json alphas = json::array();
    for (const Permutation& a : w.alphas) alphas.push_back(to_cycle_string(a));
    j["alphas"] = alphas;
    j["omega"] = to_cycle_string(w.omega);
    j["verdict"] = w.primitive ? "primitive" : "imprimitive";
    if (w.blocks) j["blocks"] = to_json(*w.blocks);
    // Echo where each normalized partition sat in the caller's input when the
    // normalization reordered anything.
    bool moved = false;
    for (int i = 0; i < w.datum.k(); ++i)
        if (w.datum.input_positions()[i] != i) moved = true;
    if (moved) j["input_order"] = w.datum.input_positions();
    return j;
}

RealizationWitness witness_from_json(const json& j) {
    BranchDatum datum = datum_from_json(j);
    if (!j.contains("alphas") || !j.contains("omega") || !j.contains("verdict"))
        throw parse_error("witness JSON needs \"alphas\", \"omega\", \"verdict\"");
    RealizationWitness w{datum, {}, Permutation(datum.degree()), false, std::nullopt};
    for (const auto& s : j.at("alphas"))
        w.alphas.push_back(parse_cycles(s.get<std::string>(), datum.degree()));
    w.omega = parse_cycles(j.at("omega").get<std::string>(), datum.degree());
    std::string verdict = j.at("verdict").get<std::string>();
    if (verdict != "primitive" && verdict != "imprimitive")
        throw parse_error("verdict must be \"primitive\" or \"imprimitive\"");
    w.primitive = verdict == "primitive";
    if (j.contains("blocks")) {
        BlockSystem sys;
        for (const auto& arr : j.at("blocks")) {
            std::vector<int> b;
            for (const auto& v : arr) b.push_back(v.get<int>() - 1);
            std::sort(b.begin(), b.end());
            sys.blocks.push_back(std::move(b));
        }
        std::sort(sys.blocks.begin(), sys.blocks.end());
        w.blocks = std::move(sys);
    }
    return w;
}

json to_json(const Classification& c) {
    json j{{"indecomposable_realizable", c.indecomposable_realizable},
           {"indecomposable_reason", c.indecomposable_reason},
           {"decomposable_realizable", c.decomposable_realizable},
           {"decomposable_reason", c.decomposable_reason},
           {"coexistence", c.coexistence}};
    j["factorization"] = c.factorization ? to_json(*c.factorization) : json(nullptr);
    return j;
}

json to_json(const OracleResult& r) {
    json j{{"primitive_found", r.primitive_found},
           {"imprimitive_found", r.imprimitive_found},
           {"complete", r.complete},
           {"tuples_examined", r.tuples_examined},
           {"tuples_total", r.tuples_total},
           {"realizations", r.realizations},
           {"intransitive_alpha_realizations", r.intransitive_alpha_realizations},
           {"cycle_count_violations", r.cycle_count_violations}};
    j["primitive_witness"] =
        r.primitive_witness ? to_json(*r.primitive_witness) : json(nullptr);
    j["imprimitive_witness"] =
        r.imprimitive_witness ? to_json(*r.imprimitive_witness) : json(nullptr);
    return j;
}

json to_json(const WitnessReport& r) {
    json checks = json::array();
    for (const WitnessCheck& c : r.checks) {
        json cj{{"check", c.name}, {"pass", c.pass}};
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(cj);
    }
    return json{{"checks", checks}, {"all_pass", r.all_pass}};
}

json to_json(const TheoremReportEntry& e) {
    json j{{"datum", to_json(e.datum)},
           {"classify", to_json(e.expected)},
           {"oracle", to_json(e.oracle)},
           {"agree", e.agree}};
    if (!e.notes.empty()) j["notes"] = e.notes;
    return j;
}

}  // namespace branchcov
