#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "projline/report.hpp"

namespace projline {

// Finite field given extensionally: element names plus full addition and
// multiplication tables. Nothing about the arithmetic is assumed; fieldhood
// is decided by validate_field.
struct field_table {
    std::vector<std::string> elements;
    int zero = -1;
    int one = -1;
    std::vector<int> add;  // q*q row-major, entries are element indices
    std::vector<int> mul;

    int q() const { return static_cast<int>(elements.size()); }

    int plus(int a, int b) const { return add[static_cast<size_t>(a) * elements.size() + b]; }
    int times(int a, int b) const { return mul[static_cast<size_t>(a) * elements.size() + b]; }

    int index_of(const std::string& name) const {
        for (int i = 0; i < q(); ++i)
            if (elements[i] == name) return i;
        throw error(errc::malformed_table, "unknown element id '" + name + "'");
    }

    const std::string& name(int i) const { return elements[static_cast<size_t>(i)]; }

    int neg(int a) const {
        for (int b = 0; b < q(); ++b)
            if (plus(a, b) == zero) return b;
        throw error(errc::invalid_field, "no additive inverse for '" + name(a) + "'");
    }

    int inv(int a) const {
        if (a == zero) throw error(errc::invalid_field, "zero has no multiplicative inverse");
        for (int b = 0; b < q(); ++b)
            if (times(a, b) == one) return b;
        throw error(errc::invalid_field, "no multiplicative inverse for '" + name(a) + "'");
    }

    bool operator==(const field_table& o) const {
        return elements == o.elements && zero == o.zero && one == o.one && add == o.add &&
               mul == o.mul;
    }
};

inline field_table make_prime_field(int p) {
    if (p < 2) throw error(errc::composite_modulus, std::to_string(p) + " is not prime");
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw error(errc::composite_modulus, std::to_string(p) + " is not prime");
    field_table f;
    f.elements.reserve(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i) f.elements.push_back(std::to_string(i));
    f.zero = 0;
    f.one = 1;
    f.add.resize(static_cast<size_t>(p) * p);
    f.mul.resize(static_cast<size_t>(p) * p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            f.add[static_cast<size_t>(i) * p + j] = (i + j) % p;
            f.mul[static_cast<size_t>(i) * p + j] = (i * j) % p;
        }
    return f;
}

namespace detail {

inline std::string fmt_triple(const field_table& f, const char* op, int a, int b, int c) {
    std::ostringstream os;
    os << f.name(a) << op << f.name(b) << op << f.name(c);
    return os.str();
}

}  // namespace detail

// Checks every field axiom exhaustively. A failed check carries a witness
// tuple; the report is clean exactly when the table is a field.
inline validation_report validate_field(const field_table& f) {
    const int q = f.q();
    if (q == 0) throw error(errc::malformed_table, "empty element list");
    if (f.zero < 0 || f.zero >= q || f.one < 0 || f.one >= q)
        throw error(errc::malformed_table, "zero/one not a declared element");
    if (f.add.size() != static_cast<size_t>(q) * q || f.mul.size() != static_cast<size_t>(q) * q)
        throw error(errc::malformed_table, "table size mismatch");
    for (int v : f.add)
        if (v < 0 || v >= q) throw error(errc::malformed_table, "add entry out of range");
    for (int v : f.mul)
        if (v < 0 || v >= q) throw error(errc::malformed_table, "mul entry out of range");
    {
        auto sorted = f.elements;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw error(errc::malformed_table, "duplicate element id");
    }

    validation_report rep;
    auto check = [&rep](const std::string& name) -> check_result& {
        rep.checks.push_back({name, true, ""});
        return rep.checks.back();
    };
    auto fail = [&f](check_result& c, const std::string& w) {
        if (c.passed) {
            c.passed = false;
            c.witness = w;
        }
        (void)f;
    };

    {
        auto& c = check("zero_one_distinct");
        if (f.zero == f.one) fail(c, "zero and one are both '" + f.name(f.zero) + "'");
    }
    {
        auto& c = check("add_associative");
        for (int a = 0; a < q && c.passed; ++a)
            for (int b = 0; b < q && c.passed; ++b)
                for (int x = 0; x < q; ++x)
                    if (f.plus(f.plus(a, b), x) != f.plus(a, f.plus(b, x))) {
                        fail(c, "a=" + f.name(a) + " b=" + f.name(b) + " c=" + f.name(x));
                        break;
                    }
    }
    {
        auto& c = check("add_commutative");
        for (int a = 0; a < q && c.passed; ++a)
            for (int b = 0; b < q; ++b)
                if (f.plus(a, b) != f.plus(b, a)) {
                    fail(c, "a=" + f.name(a) + " b=" + f.name(b));
                    break;
                }
    }
    {
        auto& c = check("add_identity");
        for (int a = 0; a < q; ++a)
            if (f.plus(f.zero, a) != a || f.plus(a, f.zero) != a) {
                fail(c, "a=" + f.name(a));
                break;
            }
    }
    {
        auto& c = check("add_inverses");
        for (int a = 0; a < q; ++a) {
            bool found = false;
            for (int b = 0; b < q; ++b)
                if (f.plus(a, b) == f.zero && f.plus(b, a) == f.zero) {
                    found = true;
                    break;
                }
            if (!found) {
                fail(c, "a=" + f.name(a) + " has no additive inverse");
                break;
            }
        }
    }
    {
        auto& c = check("mul_associative");
        for (int a = 0; a < q && c.passed; ++a)
            for (int b = 0; b < q && c.passed; ++b)
                for (int x = 0; x < q; ++x)
                    if (f.times(f.times(a, b), x) != f.times(a, f.times(b, x))) {
                        fail(c, "a=" + f.name(a) + " b=" + f.name(b) + " c=" + f.name(x));
                        break;
                    }
    }
    {
        auto& c = check("mul_commutative");
        for (int a = 0; a < q && c.passed; ++a)
            for (int b = 0; b < q; ++b)
                if (f.times(a, b) != f.times(b, a)) {
                    fail(c, "a=" + f.name(a) + " b=" + f.name(b));
                    break;
                }
    }
    {
        auto& c = check("mul_identity");
        for (int a = 0; a < q; ++a)
            if (f.times(f.one, a) != a || f.times(a, f.one) != a) {
                fail(c, "a=" + f.name(a));
                break;
            }
    }
    {
        auto& c = check("mul_nonzero_closed");
        for (int a = 0; a < q && c.passed; ++a)
            for (int b = 0; b < q; ++b)
                if (a != f.zero && b != f.zero && f.times(a, b) == f.zero) {
                    fail(c, "a=" + f.name(a) + " b=" + f.name(b) + " gives zero");
                    break;
                }
    }
    {
        auto& c = check("mul_nonzero_inverses");
        for (int a = 0; a < q; ++a) {
            if (a == f.zero) continue;
            bool found = false;
            for (int b = 0; b < q; ++b)
                if (f.times(a, b) == f.one && f.times(b, a) == f.one) {
                    found = true;
                    break;
                }
            if (!found) {
                fail(c, "a=" + f.name(a) + " has no multiplicative inverse");
                break;
            }
        }
    }
    {
        auto& c = check("distributive");
        for (int a = 0; a < q && c.passed; ++a)
            for (int b = 0; b < q && c.passed; ++b)
                for (int x = 0; x < q; ++x) {
                    if (f.times(a, f.plus(b, x)) != f.plus(f.times(a, b), f.times(a, x)) ||
                        f.times(f.plus(b, x), a) != f.plus(f.times(b, a), f.times(x, a))) {
                        fail(c, "a=" + f.name(a) + " b=" + f.name(b) + " c=" + f.name(x));
                        break;
                    }
                }
    }
    return rep;
}

// Map from elements of one field to another, as an index vector.
struct field_isomorphism {
    std::vector<int> map;
};

namespace detail {

inline int mul_order(const field_table& f, int a) {
    int x = a, n = 1;
    while (x != f.one) {
        x = f.times(x, a);
        ++n;
        if (n > f.q()) return -1;  // not invertible, never cycles back
    }
    return n;
}

inline int find_mul_generator(const field_table& f) {
    for (int a = 0; a < f.q(); ++a) {
        if (a == f.zero) continue;
        if (mul_order(f, a) == f.q() - 1) return a;
    }
    return -1;
}

}  // namespace detail

// All isomorphisms f1 -> f2. Both tables must validate cleanly. A field
// map is fixed by where a multiplicative generator goes, so the search is
// exhaustive over generator images.
inline std::vector<field_isomorphism> field_isomorphisms(const field_table& f1,
                                                         const field_table& f2) {
    if (!validate_field(f1).clean() || !validate_field(f2).clean())
        throw error(errc::invalid_field, "field_isomorphisms requires valid fields");
    std::vector<field_isomorphism> out;
    const int q = f1.q();
    if (q != f2.q()) return out;
    if (q == 2) {
        field_isomorphism iso;
        iso.map = {0, 0};
        iso.map[static_cast<size_t>(f1.zero)] = f2.zero;
        iso.map[static_cast<size_t>(f1.one)] = f2.one;
        out.push_back(iso);
        return out;
    }
    const int g = detail::find_mul_generator(f1);
    for (int h = 0; h < q; ++h) {
        if (h == f2.zero || detail::mul_order(f2, h) != q - 1) continue;
        std::vector<int> map(static_cast<size_t>(q), -1);
        map[static_cast<size_t>(f1.zero)] = f2.zero;
        int x = f1.one, y = f2.one;
        map[static_cast<size_t>(x)] = y;
        for (int k = 1; k < q - 1; ++k) {
            x = f1.times(x, g);
            y = f2.times(y, h);
            map[static_cast<size_t>(x)] = y;
        }
        bool ok = true;
        for (int a = 0; a < q && ok; ++a)
            for (int b = 0; b < q; ++b)
                if (map[static_cast<size_t>(f1.plus(a, b))] !=
                    f2.plus(map[static_cast<size_t>(a)], map[static_cast<size_t>(b)])) {
                    ok = false;
                    break;
                }
        if (ok) out.push_back({std::move(map)});
    }
    return out;
}

inline std::optional<field_isomorphism> field_iso_check(const field_table& f1,
                                                        const field_table& f2) {
    auto all = field_isomorphisms(f1, f2);
    if (all.empty()) return std::nullopt;
    return all.front();
}

// ---- serialization ----------------------------------------------------
//
// {"elements": [...], "zero": id, "one": id, "add": [...], "mul": [...]}
// with tables flattened row-major. Key order is fixed so identical tables
// serialize to identical bytes.

inline nlohmann::ordered_json field_to_json(const field_table& f) {
    nlohmann::ordered_json j;
    j["elements"] = f.elements;
    j["zero"] = f.name(f.zero);
    j["one"] = f.name(f.one);
    auto dump_table = [&f](const std::vector<int>& t) {
        std::vector<std::string> names;
        names.reserve(t.size());
        for (int v : t) names.push_back(f.name(v));
        return names;
    };
    j["add"] = dump_table(f.add);
    j["mul"] = dump_table(f.mul);
    return j;
}

inline void write_field(const field_table& f, std::ostream& os) {
    os << field_to_json(f).dump(2) << "\n";
}

inline void write_field(const field_table& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw error(errc::io_error, "cannot open '" + path + "' for writing");
    write_field(f, os);
}

inline field_table field_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("elements") || !j.contains("zero") || !j.contains("one") ||
        !j.contains("add") || !j.contains("mul"))
        throw error(errc::malformed_table, "field file needs elements/zero/one/add/mul");
    field_table f;
    f.elements = j.at("elements").get<std::vector<std::string>>();
    if (f.elements.empty()) throw error(errc::malformed_table, "empty element list");
    std::unordered_map<std::string, int> idx;
    for (int i = 0; i < f.q(); ++i) {
        if (!idx.emplace(f.elements[static_cast<size_t>(i)], i).second)
            throw error(errc::malformed_table,
                        "duplicate element id '" + f.elements[static_cast<size_t>(i)] + "'");
    }
    auto lookup = [&idx](const std::string& name) {
        auto it = idx.find(name);
        if (it == idx.end())
            throw error(errc::malformed_table, "unknown element id '" + name + "'");
        return it->second;
    };
    f.zero = lookup(j.at("zero").get<std::string>());
    f.one = lookup(j.at("one").get<std::string>());
    auto load_table = [&](const char* key) {
        const auto& arr = j.at(key);
        if (!arr.is_array() || arr.size() != static_cast<size_t>(f.q()) * f.q())
            throw error(errc::malformed_table, std::string(key) + " table has wrong size");
        std::vector<int> t;
        t.reserve(arr.size());
        for (const auto& v : arr) t.push_back(lookup(v.get<std::string>()));
        return t;
    };
    f.add = load_table("add");
    f.mul = load_table("mul");
    return f;
}

inline field_table read_field(std::istream& is) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
        throw error(errc::parse_error, e.what());
    }
    return field_from_json(j);
}

inline field_table read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw error(errc::io_error, "cannot open '" + path + "'");
    return read_field(is);
}

}  // namespace projline
