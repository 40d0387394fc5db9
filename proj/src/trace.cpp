#include "iwahori/trace.hpp"

#include <sstream>
#include <stdexcept>

namespace iwahori {

namespace {

std::string half_str(int t) {
    if (t % 2 == 0) return std::to_string(t / 2);
    return std::to_string(t) + "/2";
}

}  // namespace

const QLPoly& TraceTable::at_half(int t) const {
    auto it = values.find(t);
    if (it == values.end())
        throw std::out_of_range("TraceTable: no value at k = " + half_str(t));
    return it->second;
}

std::string TraceTable::str() const {
    std::ostringstream os;
    for (const auto& [t, v] : values) os << half_str(t) << ": " << v.str() << "\n";
    return os.str();
}

TraceTable l_values(int d) {
    if (d < 1) throw std::invalid_argument("l_values: degree must be positive");
    TraceTable tab;
    tab.d = d;
    tab.values[0] = QLPoly::lam_pow(d);
    QLPoly qm1 = QLPoly::q_pow(1) - QLPoly::constant(1);
    for (int t = 1; t <= d; ++t) {
        QLPoly sum;
        for (int i = 0; t - 1 - 2 * i >= 0; ++i)
            sum += QLPoly::q_pow(i) * tab.values.at(t - 1 - 2 * i);
        if (t % 2 == 0)
            tab.values[t] = QLPoly::term(1, t / 2, d) - qm1 * sum;
        else
            tab.values[t] = -(qm1 * sum);
    }
    for (int t = d + 1; t <= 2 * d; ++t) tab.values[t] = tab.values.at(2 * d - t);
    return tab;
}

TraceReport verify_difference(int d) {
    TraceTable tab = l_values(d);
    TraceReport rep;
    for (int t = 1; t <= d; ++t) {
        QLPoly lhs = tab.at_half(t) - tab.at_half(t - 1);
        QLPoly rhs = QLPoly::term(t % 2 == 0 ? 1 : -1, t, d);
        if (lhs != rhs) {
            rep.ok = false;
            rep.failures.push_back("d=" + std::to_string(d) + " k=" + half_str(t) +
                                   ": got " + lhs.str() + ", want " + rhs.str());
        }
    }
    return rep;
}

TraceReport verify_unweighted(int d) {
    TraceTable tab = l_values(d);
    QLPoly qm1 = QLPoly::q_pow(1) - QLPoly::constant(1);
    TraceReport rep;
    for (int t = 1; t <= d; ++t) {
        QLPoly sum;
        for (int i = 0; t - 1 - 2 * i >= 0; ++i)
            sum += QLPoly::q_pow(i) * tab.at_half(t - 1 - 2 * i);
        QLPoly lhs = tab.at_half(t) + qm1 * sum;
        QLPoly rhs = t % 2 == 0 ? QLPoly::term(1, t / 2, d) : QLPoly();
        if (lhs != rhs) {
            rep.ok = false;
            rep.failures.push_back("d=" + std::to_string(d) + " k=" + half_str(t) +
                                   ": got " + lhs.str() + ", want " + rhs.str());
        }
    }
    return rep;
}

std::vector<DictionaryEntry> sheaf_operator_table() {
    using HG = HeckeGenerator;
    std::vector<DictionaryEntry> table;
    table.push_back({Multisegment{{{0, 1}, {1, 1}}}, HG::compose({HG::tleq(2)}),
                     QLPoly::term(-1, 0, 1)});
    table.push_back({Multisegment{{{0, 2}}},
                     HG::compose({HG::srefl(1), HG::tleq(2)}), QLPoly::lam_pow(1)});
    table.push_back({Multisegment{{{1, 2}}},
                     HG::compose({HG::tleq(2), HG::srefl(1)}), QLPoly::lam_pow(1)});

    std::vector<Multisegment> classes = enumerate_classes({1, 1}, 2);
    if (classes.size() != table.size())
        throw std::logic_error("sheaf_operator_table: class count mismatch");
    for (size_t i = 0; i < table.size(); ++i) {
        if (classes[i] != table[i].ms)
            throw std::logic_error("sheaf_operator_table: classes out of order");
        if (expected_eigenvalue(table[i].op) != table[i].eigenvalue)
            throw std::logic_error("sheaf_operator_table: eigenvalue mismatch at row " +
                                   std::to_string(i));
    }
    return table;
}

}  // namespace iwahori
