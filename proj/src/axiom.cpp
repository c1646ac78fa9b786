#include "densify/axiom.hpp"

#include <algorithm>

namespace densify {

Axiom box_to_diamond(int antecedent_boxes, int consequent_boxes) {
    const int n = antecedent_boxes;
    const int m = consequent_boxes;
    if (!(n > m && m > 1))
        throw DomainError("box form []^n p -> []^m p requires n > m > 1, got n=" +
                          std::to_string(n) + " m=" + std::to_string(m));
    return Axiom(m, n);
}

AxiomSet::AxiomSet(std::vector<Axiom> axioms) : axioms_(std::move(axioms)) {
    std::sort(axioms_.begin(), axioms_.end());
    axioms_.erase(std::unique(axioms_.begin(), axioms_.end()), axioms_.end());
}

int AxiomSet::min_m() const {
    int m = axioms_.empty() ? 2 : axioms_.front().m();
    for (const Axiom& a : axioms_) m = std::min(m, a.m());
    return m;
}

std::string AxiomSet::to_string() const {
    std::string out;
    for (const Axiom& a : axioms_) {
        if (!out.empty()) out += ',';
        out += a.to_string();
    }
    return out;
}

AxiomSet parse_axiom_set(const std::string& spec) {
    std::vector<Axiom> axioms;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t end = spec.find(',', pos);
        if (end == std::string::npos) end = spec.size();
        const std::string item = spec.substr(pos, end - pos);
        const std::size_t gt = item.find('>');
        if (gt == std::string::npos || gt == 0 || gt + 1 >= item.size())
            throw DomainError("bad axiom spec '" + item + "' (expected m>n, e.g. 2>3)");
        int m = 0, n = 0;
        try {
            std::size_t used = 0;
            m = std::stoi(item.substr(0, gt), &used);
            if (used != gt) throw std::invalid_argument("junk");
            n = std::stoi(item.substr(gt + 1), &used);
            if (used != item.size() - gt - 1) throw std::invalid_argument("junk");
        } catch (const std::exception&) {
            throw DomainError("bad axiom spec '" + item + "' (expected m>n, e.g. 2>3)");
        }
        axioms.emplace_back(m, n);
        pos = end + 1;
    }
    if (axioms.empty()) throw DomainError("empty axiom spec");
    return AxiomSet(std::move(axioms));
}

}  // namespace densify
