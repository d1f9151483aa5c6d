#pragma once

// JSON encodings. Rationals are decimal strings "p/q"; elements of K are
// {"c0", "c1"}, elements of L {"x", "y"}, forms {"a", "b", "c"} and ideals
// {"alpha", "beta", "eps"}.

#include <string>
#include <vector>

#include <json.hpp>

#include "qfc/correspondence.hpp"

namespace qfc::json {

using nlohmann::json;

inline json encode(const Rational& r) { return to_fraction_string(r); }

inline Rational decode_rational(const json& j)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    raise(ErrorKind::ParseError, "expected a rational string, got " + j.dump());
}

template <BaseField K>
json encode(const KElement<K>& x)
{
    return {{"c0", encode(x.c0())}, {"c1", encode(x.c1())}};
}

/// Accepts {"c0", "c1"}, the text syntax "c0+c1w", or a JSON integer.
template <BaseField K>
KElement<K> decode_kelement(const json& j)
{
    if (j.is_object()) {
        if (!j.contains("c0"))
            raise(ErrorKind::ParseError, "field element without c0: " + j.dump());
        Rational c0 = decode_rational(j.at("c0"));
        Rational c1 = j.contains("c1") ? decode_rational(j.at("c1")) : Rational(0);
        return KElement<K>(c0, c1);
    }
    if (j.is_string())
        return parse_kelement<K>(j.get<std::string>());
    if (j.is_number_integer())
        return KElement<K>(j.get<long long>());
    raise(ErrorKind::ParseError, "expected a field element, got " + j.dump());
}

template <BaseField K>
json encode(const LElement<K>& a)
{
    return {{"x", encode(a.x())}, {"y", encode(a.y())}};
}

template <BaseField K>
LElement<K> decode_lelement(const json& j, const Extension<K>& ext)
{
    if (!j.is_object() || !j.contains("x"))
        raise(ErrorKind::ParseError, "expected {\"x\", \"y\"}, got " + j.dump());
    KElement<K> x = decode_kelement<K>(j.at("x"));
    KElement<K> y = j.contains("y") ? decode_kelement<K>(j.at("y")) : KElement<K>(0);
    return ext.element(x, y);
}

template <BaseField K>
json encode(const Extension<K>& ext)
{
    return {{"base", std::string(K::descriptor.name)},
            {"D", encode(ext.discriminant())},
            {"w", encode(ext.w())},
            {"z", encode(ext.z())}};
}

inline json encode(const SignVector& eps) { return eps.values(); }

inline SignVector decode_signs(const json& j, int r)
{
    if (!j.is_array())
        raise(ErrorKind::ParseError, "eps must be an array of +1/-1");
    std::vector<int> out;
    for (const auto& e : j) {
        if (!e.is_number_integer() || (e.get<int>() != 1 && e.get<int>() != -1))
            raise(ErrorKind::ParseError, "eps entries must be +1 or -1");
        out.push_back(e.get<int>());
    }
    if (static_cast<int>(out.size()) != r)
        raise(ErrorKind::ParseError, "eps must have " + std::to_string(r) + " entries");
    return SignVector(std::move(out));
}

template <BaseField K>
json encode(const OrientedIdeal<K>& ideal)
{
    return {{"alpha", encode(ideal.basis.alpha)}, {"beta", encode(ideal.basis.beta)}, {"eps", encode(ideal.eps)}};
}

/// A missing "eps" means the orientation of the given basis.
template <BaseField K>
OrientedIdeal<K> decode_ideal(const json& j, const Extension<K>& ext)
{
    if (!j.is_object() || !j.contains("alpha") || !j.contains("beta"))
        raise(ErrorKind::ParseError, "expected {\"alpha\", \"beta\", \"eps\"}");
    IdealBasis<K> basis{ext, decode_lelement<K>(j.at("alpha"), ext), decode_lelement<K>(j.at("beta"), ext)};
    if (!j.contains("eps"))
        return oriented(std::move(basis));
    SignVector eps = decode_signs(j.at("eps"), K::descriptor.real_embeddings);
    return {std::move(basis), std::move(eps)};
}

template <BaseField K>
json encode(const QuadraticForm<K>& f)
{
    return {{"a", encode(f.a)}, {"b", encode(f.b)}, {"c", encode(f.c)}};
}

template <BaseField K>
QuadraticForm<K> decode_form(const json& j)
{
    if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("c"))
        raise(ErrorKind::ParseError, "expected {\"a\", \"b\", \"c\"}");
    return {decode_kelement<K>(j.at("a")), decode_kelement<K>(j.at("b")), decode_kelement<K>(j.at("c"))};
}

template <BaseField K>
json encode(const FormTransformation<K>& t)
{
    return {{"p", encode(t.p)}, {"q", encode(t.q)}, {"r", encode(t.r)}, {"s", encode(t.s)}, {"u", encode(t.u)}};
}

inline const char* omega_kind_name(OmegaKind k)
{
    switch (k) {
    case OmegaKind::None: return "none";
    case OmegaKind::Sqrt: return "sqrt(m)";
    case OmegaKind::HalfSqrt: return "(1+sqrt(m))/2";
    }
    return "none";
}

inline json encode(const FieldDescriptor& d)
{
    json out{{"name", std::string(d.name)},
             {"omega_kind", omega_kind_name(d.omega_kind)},
             {"r", d.real_embeddings},
             {"unit_norm_sign", d.unit_norm_sign}};
    out["m"] = d.omega_kind == OmegaKind::None ? json(nullptr) : json(d.m);
    if (d.has_fundamental_unit)
        out["fundamental_unit"] = {{"c0", encode(Rational(d.unit_c0))}, {"c1", encode(Rational(d.unit_c1))}};
    else
        out["fundamental_unit"] = nullptr;
    return out;
}

inline json registry()
{
    json out = json::array();
    for (const auto& d : field_registry)
        out.push_back(encode(d));
    return out;
}

inline const char* to_string(Equivalence e)
{
    switch (e) {
    case Equivalence::Equivalent: return "Equivalent";
    case Equivalence::NotEquivalent: return "NotEquivalent";
    case Equivalence::Unknown: return "Unknown";
    }
    return "Unknown";
}

} // namespace qfc::json
