#include "icrypt/poly.hpp"

#include <algorithm>
#include <sstream>

using nlohmann::json;

namespace icrypt {

MPoly MPoly::monomial(RingPtr r, const Exponents& e, const Elem& coeff) {
    MPoly p(std::move(r), static_cast<int>(e.size()));
    p.add_term(e, coeff);
    return p;
}

long MPoly::total_degree() const {
    long best = 0;
    for (const auto& [e, c] : terms) {
        long d = 0;
        for (long x : e) d += x;
        best = std::max(best, d);
    }
    return best;
}

void MPoly::add_term(const Exponents& e, const Elem& coeff) {
    if (static_cast<int>(e.size()) != nvars) throw ParamError("exponent arity mismatch");
    auto it = terms.find(e);
    if (it == terms.end()) {
        if (!ring->is_zero(coeff)) terms.emplace(e, coeff);
        return;
    }
    Elem s = ring->add(it->second, coeff);
    if (ring->is_zero(s))
        terms.erase(it);
    else
        it->second = s;
}

MPoly MPoly::add(const MPoly& o) const {
    MPoly out = *this;
    for (const auto& [e, c] : o.terms) out.add_term(e, c);
    return out;
}

MPoly MPoly::mul(const MPoly& o) const {
    MPoly out(ring, nvars);
    for (const auto& [e1, c1] : terms)
        for (const auto& [e2, c2] : o.terms) {
            Exponents e(nvars);
            for (int i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
            out.add_term(e, ring->mul(c1, c2));
        }
    return out;
}

MPoly MPoly::scale(const Elem& c) const {
    MPoly out(ring, nvars);
    for (const auto& [e, coeff] : terms) out.add_term(e, ring->mul(coeff, c));
    return out;
}

MPoly MPoly::neg() const { return scale(ring->neg(ring->one())); }

Elem eval_monomial(const Ring& ring, const Exponents& e, const std::vector<Elem>& point) {
    if (e.size() != point.size()) throw ParamError("eval_monomial: arity mismatch");
    Elem acc = ring.one();
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        acc = ring.mul(acc, ring.pow(point[i], Int(e[i])));
    }
    return acc;
}

Elem MPoly::eval(const std::vector<Elem>& point) const {
    Elem acc = ring->zero();
    for (const auto& [e, c] : terms) acc = ring->add(acc, ring->mul(c, eval_monomial(*ring, e, point)));
    return acc;
}

MPoly MPoly::substitute_linear(const Matrix& m) const {
    if (m.n != nvars) throw ParamError("substitute_linear: dimension mismatch");
    std::vector<MPoly> forms;
    forms.reserve(nvars);
    for (int j = 0; j < nvars; ++j) {
        MPoly f(ring, nvars);
        for (int k = 0; k < nvars; ++k) {
            Exponents e(nvars, 0);
            e[k] = 1;
            f.add_term(e, m.at(j, k));
        }
        forms.push_back(std::move(f));
    }
    MPoly out(ring, nvars);
    for (const auto& [e, c] : terms) {
        MPoly t(ring, nvars);
        t.add_term(Exponents(nvars, 0), c);
        for (int j = 0; j < nvars; ++j) {
            if (e[j] < 0) throw EvalError("substitute_linear: negative exponent");
            for (long k = 0; k < e[j]; ++k) t = t.mul(forms[j]);
        }
        out = out.add(t);
    }
    return out;
}

std::string MPoly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest degree first
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        bool has_var = false;
        for (int i = 0; i < nvars; ++i)
            if (it->first[i] != 0) has_var = true;
        if (!ring->is_one(it->second) || !has_var) os << ring->str(it->second);
        bool printed = !ring->is_one(it->second) || !has_var;
        for (int i = 0; i < nvars; ++i) {
            if (it->first[i] == 0) continue;
            if (printed) os << "*";
            printed = true;
            os << "x" << (i + 1);
            if (it->first[i] != 1) os << "^" << it->first[i];
        }
    }
    return os.str();
}

json MPoly::to_json() const {
    json arr = json::array();
    for (const auto& [e, c] : terms) arr.push_back({{"exp", e}, {"coeff", ring->elem_to_json(c)}});
    return {{"nvars", nvars}, {"terms", arr}};
}

MPoly MPoly::from_json(RingPtr r, const json& j) {
    MPoly p(std::move(r), j.at("nvars").get<int>());
    for (const auto& t : j.at("terms"))
        p.add_term(t.at("exp").get<Exponents>(), p.ring->elem_from_json(t.at("coeff")));
    return p;
}

}  // namespace icrypt
