#include "regabs/front/parse.hpp"
#include "regabs/logic/ops.hpp"

namespace regabs::front {

using namespace regabs::logic;

std::string print_system(const ArraySystem& sys) {
    std::string out;
    for (const auto& n : sys.vocab.order) {
        const auto& vi = sys.vocab.vars.at(n);
        if (vi.param) {
            out += "param " + n + "\n";
        } else if (vi.sort == Sort::Index) {
            out += "index " + n;
            if (vi.lo) out += " bounds " + to_string(*vi.lo) + " " + to_string(*vi.hi);
            out += "\n";
        } else if (vi.sort == Sort::Data) {
            out += "data " + n + "\n";
        } else {
            out += "array " + n + " size " + vi.size_param + "\n";
        }
    }
    out += "extent " + sys.vocab.extent + "\n";
    out += "init: " + to_string(sys.init) + "\n";
    for (const auto& c : sys.commands) {
        out += "cmd " + c.name + ": " + to_string(c.guard) + " |> ";
        for (size_t i = 0; i < c.updates.size(); ++i) {
            const auto& u = c.updates[i];
            if (i) out += ", ";
            switch (u.kind) {
                case Update::Kind::SetIndex:
                    out += u.target + " := " + to_string(u.rhs);
                    break;
                case Update::Kind::HavocIndex:
                    out += u.target + " := *";
                    break;
                case Update::Kind::SetCell:
                    out += u.target + "[" + to_string(u.cell) + "] := " + to_string(u.rhs);
                    break;
                case Update::Kind::HavocCell:
                    out += u.target + "[" + to_string(u.cell) + "] := *";
                    break;
            }
        }
        out += "\n";
    }
    return out;
}

std::string print_predicates(const std::vector<IndexedPredicate>& preds) {
    std::string out;
    for (const auto& p : preds) out += "pred " + to_string(p.atom) + "\n";
    return out;
}

static bool equal_updates(const Update& a, const Update& b) {
    if (a.kind != b.kind || a.target != b.target) return false;
    if (a.kind == Update::Kind::SetCell || a.kind == Update::Kind::HavocCell)
        if (a.cell != b.cell) return false;
    if (a.kind == Update::Kind::SetIndex || a.kind == Update::Kind::SetCell)
        if (a.rhs != b.rhs) return false;
    return true;
}

bool equal_systems(const ArraySystem& a, const ArraySystem& b) {
    if (a.vocab.order != b.vocab.order || a.vocab.extent != b.vocab.extent) return false;
    for (const auto& n : a.vocab.order) {
        const auto& x = a.vocab.vars.at(n);
        const auto& y = b.vocab.vars.at(n);
        if (x.sort != y.sort || x.param != y.param || x.size_param != y.size_param) return false;
        if (x.lo.has_value() != y.lo.has_value()) return false;
        if (x.lo && (*x.lo != *y.lo || *x.hi != *y.hi)) return false;
    }
    if (!equal(a.init, b.init)) return false;
    if (a.commands.size() != b.commands.size()) return false;
    for (size_t i = 0; i < a.commands.size(); ++i) {
        const auto& c = a.commands[i];
        const auto& d = b.commands[i];
        if (c.name != d.name || !equal(c.guard, d.guard)) return false;
        if (c.updates.size() != d.updates.size()) return false;
        for (size_t j = 0; j < c.updates.size(); ++j)
            if (!equal_updates(c.updates[j], d.updates[j])) return false;
    }
    return true;
}

}  // namespace regabs::front
