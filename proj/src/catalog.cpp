#include "mlie/catalog.hpp"

#include "mlie/cochain.hpp"
#include "mlie/constructions.hpp"

#include <fmt/format.h>

namespace mlie {

Algebra catalog_algebra(const std::string& table)
{
    if (table == "gh21")
        return build_hamiltonian(BilinearForm::Pi(2), {2, 2}, Variant::derived);
    if (table == "gh31")
        return build_hamiltonian(BilinearForm::Pi(2), {2, 3}, Variant::derived);
    if (table == "hI22")
        return build_hamiltonian(BilinearForm::I(2), {2, 2}, Variant::full);
    throw AlgebraError("unknown cocycle table '" + table + "'");
}

WeightMode catalog_mode(const std::string& table)
{
    return table == "hI22" ? WeightMode::outer : WeightMode::z;
}

const std::vector<CatalogCocycle>& catalog_cocycles()
{
    static const std::vector<CatalogCocycle> all = {
        // h'_Pi(2;2,2), non-negative weights
        {"gh21", "c_{4,-2}", {4, -2},
         "p^(3) (x) d(q)^d(q^(2)) + p^(3)*q (x) d(q)^d(q^(3)) + p^(3)*q^(2) (x) d(q^(2))^d(q^(3))"},
        {"gh21", "c_{0,-4}", {0, -4},
         "p (x) d(p*q^(2))^d(p*q^(3)) + p (x) d(q^(3))^d(p^(2)*q^(2)) + q (x) d(q^(3))^d(p*q^(3))"
         " + p^(2) (x) d(p*q^(2))^d(p^(2)*q^(3)) + p^(2) (x) d(q^(3))^d(p^(3)*q^(2))"
         " + p*q (x) d(q^(3))^d(p^(2)*q^(3)) + p^(3) (x) d(p^(2)*q^(2))^d(p^(2)*q^(3))"
         " + p^(3) (x) d(p*q^(3))^d(p^(3)*q^(2)) + p^(2)*q (x) d(p*q^(3))^d(p^(2)*q^(3))"},
        {"gh21", "c_{2,0}", {2, 0},
         "p^(2) (x) d(p)^d(q) + p*q^(2) (x) d(q)^d(q^(2)) + p^(3)*q (x) d(q)^d(p^(2)*q)"
         " + p^(3)*q^(2) (x) d(p)^d(p*q^(3)) + p^(3)*q^(2) (x) d(q^(2))^d(p^(2)*q)"
         " + p^(2)*q^(3) (x) d(q)^d(p*q^(3))"},
        {"gh21", "c_{0,-2}", {0, -2},
         "p (x) d(p)^d(p*q^(3)) + p (x) d(p*q)^d(p*q^(2)) + p (x) d(q^(2))^d(p^(2)*q)"
         " + q (x) d(q)^d(p*q^(3)) + ..."},
        {"gh21", "c_{-2,-2}", {-2, -2},
         "p (x) d(p*q^(2))^d(p^(3)*q) + q (x) d(p*q^(2))^d(p^(2)*q^(2)) + q (x) d(q^(3))^d(p^(3)*q) + ..."},
        // h'_Pi(2;2,3)
        {"gh31", "c_{0,-8}", {0, -8},
         "p (x) d(p*q^(4))^d(p*q^(5)) + p (x) d(q^(5))^d(p^(2)*q^(4)) + q (x) d(p*q^(4))^d(q^(6)) + ..."},
        {"gh31", "c_{1,-7}", {1, -7},
         "p (x) d(q^(4))^d(p*q^(4)) + q (x) d(q^(4))^d(q^(5)) + p^(2) (x) d(q^(4))^d(p^(2)*q^(4)) + ..."},
        {"gh31", "c_{4,-4}", {4, -4},
         "p^(3) (x) d(q)^d(q^(4)) + p^(3)*q (x) d(q)^d(q^(5)) + p^(3)*q (x) d(q^(2))^d(q^(4)) + ..."},
        {"gh31", "c_{4,-2}", {4, -2},
         "p^(3) (x) d(q)^d(q^(2)) + p^(3)*q (x) d(q)^d(q^(3)) + p^(3)*q^(2) (x) d(q)^d(q^(4)) + ..."},
        {"gh31", "c_{1,-5}", {1, -5}, "p (x) d(q^(2))^d(p*q^(4)) + p (x) d(p*q^(2))^d(q^(4)) + ..."},
        {"gh31", "c_{0,-4}", {0, -4}, "p (x) d(p*q^(2))^d(p*q^(3)) + p (x) d(q^(3))^d(p^(2)*q^(2)) + ..."},
        {"gh31", "c_{-1,-5}", {-1, -5}, "p (x) d(p^(2))^d(p*q^(6)) + p (x) d(p^(3))^d(q^(6)) + ..."},
        {"gh31", "c_{-2,-6}", {-2, -6}, "p (x) d(p*q^(4))^d(p^(3)*q^(3)) + q (x) d(p*q^(4))^d(p^(2)*q^(4)) + ..."},
        {"gh31", "c_{-2,-4}", {-2, -4}, "p (x) d(p*q^(2))^d(p^(3)*q^(3)) + p (x) d(p^(3)*q)^d(p*q^(4)) + ..."},
        {"gh31", "c_{-1,-3}", {-1, -3}, "p (x) d(q^(2))^d(p^(3)*q^(2)) + p (x) d(p^(2)*q)^d(p*q^(3)) + ..."},
        {"gh31", "c_{0,-2}", {0, -2}, "p (x) d(p*q)^d(p*q^(2)) + p (x) d(q^(2))^d(p^(2)*q) + ..."},
        {"gh31", "c_{2,0}", {2, 0}, "p^(2) (x) d(p)^d(q) + p*q^(2) (x) d(q)^d(q^(2)) + ..."},
        {"gh31", "c_{-2,-2}", {-2, -2}, "p (x) d(p*q^(2))^d(p^(3)*q) + q (x) d(q)^d(p^(3)*q^(3)) + ..."},
        {"gh31", "c_{-2,0}", {-2, 0}, "p (x) d(p^(2))^d(p^(2)*q) + p (x) d(p*q)^d(p^(3)) + ..."},
        {"gh31", "c_{-4,-2}", {-4, -2}, "p (x) d(p^(3))^d(p^(3)*q^(3)) + q (x) d(p^(3))^d(p^(2)*q^(4)) + ..."},
        {"gh31", "c_{-4,0}", {-4, 0}, "p (x) d(p^(3))^d(p^(3)*q) + q (x) d(p^(3))^d(p^(2)*q^(2)) + ..."},
        {"gh31", "c_{0,4}", {0, 4}, "q^(4) (x) d(p)^d(q) + p^(2)*q^(3) (x) d(p)^d(p^(2)) + ..."},
        {"gh31", "c_{0,6}", {0, 6},
         "q^(6) (x) d(p)^d(q) + p^(2)*q^(5) (x) d(p)^d(p^(2)) + p*q^(7) (x) d(p)^d(p*q^(2))"
         " + p^(3)*q^(6) (x) d(p)^d(p^(3)*q) + p^(2)*q^(7) (x) d(q)^d(p^(3)*q)"
         " + p^(2)*q^(7) (x) d(p^(2))^d(p*q^(2))"},
        {"gh31", "c_{-2,8}", {-2, 8},
         "q^(7) (x) d(p)^d(p^(2)) + p*q^(7) (x) d(p)^d(p^(3)) + p^(2)*q^(7) (x) d(p^(2))^d(p^(3))"},
        // h_I(2;2,2), weight (0,0) mod 2, outer degree
        {"hI22", "c_{-4}^1", {-4},
         "p (x) (d(p*q)^d(p^(2)*q^(3)) + d(p*q^(2))^d(p^(2)*q^(2)) + d(p*q^(3))^d(p^(2)*q)) + ..."},
        {"hI22", "c_{-4}^2", {-4},
         "p (x) d(p^(2)*q)^d(p^(3)*q) + q (x) d(p^(3))^d(p^(3)*q) + q (x) d(p^(2)*q)^d(p^(2)*q^(2)) + ..."},
        {"hI22", "c_{-4}^3", {-4},
         "p (x) d(p*q)^d(p^(2)*q^(3)) + p (x) d(p*q^(2))^d(p^(2)*q^(2)) + p (x) d(p*q^(3))^d(p^(2)*q) + ..."},
        {"hI22", "c_{-2}^1", {-2},
         "p (x) d(p^(2))^d(p^(3)) + q (x) d(p^(2))^d(p^(2)*q) + q^(2) (x) d(p^(2))^d(p^(2)*q^(2)) + ..."},
        {"hI22", "c_{-2}^2", {-2},
         "p (x) d(q^(2))^d(p*q^(2)) + q (x) d(q^(2))^d(q^(3)) + p^(2) (x) d(q^(2))^d(p^(2)*q^(2)) + ..."},
        {"hI22", "c_{-2}^3", {-2},
         "p (x) d(p^(2))^d(p^(3)) + q (x) d(p)^d(p^(3)*q) + q (x) d(p^(2))^d(p^(2)*q) + ..."},
        {"hI22", "c_{-2}^4", {-2},
         "p (x) d(p^(2))^d(p*q^(2)) + p (x) d(p^(3))^d(q^(2)) + q (x) d(p^(2))^d(q^(3)) + ..."},
        {"hI22", "c_0", {0},
         "p (x) d(q)^d(p*q) + p^(2) (x) d(q)^d(p^(2)*q) + p^(3) (x) d(q)^d(p^(3)*q) + ..."},
        {"hI22", "c_2^1", {2},
         "q^(3) (x) d(q)^d(p^(2)) + p*q^(3) (x) d(q)^d(p^(3)) + p*q^(3) (x) d(p^(2))^d(p*q) + ..."
         " + p^(2)*q^(3) (x) d(p^(2))^d(p^(2)*q) + p^(3)*q^(3) (x) d(p^(2))^d(p^(3)*q)"
         " + p^(3)*q^(3) (x) d(p^(3))^d(p^(2)*q)"},
        {"hI22", "c_2^2", {2},
         "p^(3) (x) d(p)^d(q^(2)) + p^(3)*q (x) d(p)^d(q^(3)) + p^(3)*q (x) d(q^(2))^d(p*q)"
         " + p^(3)*q^(2) (x) d(q^(2))^d(p*q^(2)) + p^(3)*q^(3) (x) d(q^(2))^d(p*q^(3))"
         " + p^(3)*q^(3) (x) d(q^(3))^d(p*q^(2))"},
        {"hI22", "c_2^3", {2},
         "q^(3) (x) d(q)^d(q^(2)) + p*q^(3) (x) d(q)^d(p*q^(2)) + p*q^(3) (x) d(q^(2))^d(p*q)"
         " + p^(2)*q^(3) (x) d(q)^d(p^(2)*q^(2)) + p^(2)*q^(3) (x) d(q^(2))^d(p^(2)*q)"
         " + p^(3)*q^(3) (x) d(q)^d(p^(3)*q^(2)) + p^(3)*q^(3) (x) d(q^(2))^d(p^(3)*q)"
         " + p^(3)*q^(3) (x) d(p*q)^d(p^(2)*q^(2)) + p^(3)*q^(3) (x) d(p*q^(2))^d(p^(2)*q)"},
        {"hI22", "c_2^4", {2},
         "p^(3) (x) d(p)^d(p^(2)) + p^(3)*q (x) d(p)^d(p^(2)*q) + p^(3)*q (x) d(p^(2))^d(p*q)"
         " + p^(3)*q^(2) (x) d(p)^d(p^(2)*q^(2)) + p^(3)*q^(2) (x) d(p^(2))^d(p*q^(2))"
         " + p^(3)*q^(3) (x) d(p)^d(p^(2)*q^(3)) + p^(3)*q^(3) (x) d(p^(2))^d(p*q^(3))"
         " + p^(3)*q^(3) (x) d(p*q)^d(p^(2)*q^(2)) + p^(3)*q^(3) (x) d(p*q^(2))^d(p^(2)*q)"},
        {"hI22", "c_6", {6}, "p^(3)*q^(3) (x) d(p)^d(q)"},
    };
    return all;
}

std::vector<CatalogCocycle> catalog_table(const std::string& table)
{
    std::vector<CatalogCocycle> out;
    for (auto& c : catalog_cocycles())
        if (c.table == table)
            out.push_back(c);
    if (out.empty())
        throw AlgebraError("unknown cocycle table '" + table + "'");
    return out;
}

const CatalogCocycle& catalog_entry(const std::string& table, const std::string& name)
{
    for (auto& c : catalog_cocycles())
        if (c.table == table && c.name == name)
            return c;
    throw AlgebraError(fmt::format("no cocycle {} in table {}", name, table));
}

Cochain2 jurman_cocycle(const Algebra& hpi, int g, int h, bool swap)
{
    const char* a = swap ? "q" : "p";
    const char* b = swap ? "p" : "q";
    int lead = swap ? (1 << (h + 1)) - 1 : (1 << g) - 1;
    int top = swap ? (1 << g) - 1 : (1 << (h + 1)) - 1;
    const Field& F = hpi.field();
    Cochain2 c(hpi.dim());
    auto mono = [&](int ea, int eb) {
        std::string s;
        if (ea)
            s = fmt::format("{}^({})", a, ea);
        if (eb)
            s += fmt::format("{}{}^({})", s.empty() ? "" : "*", b, eb);
        return find_basis_monomial(hpi, s);
    };
    for (int m = 1; m <= top; ++m)
        for (int n = m + 1; n <= top; ++n) {
            int e = m + n - 3;
            if (e < 0 || e > top)
                continue;
            int x = mono(lead, e), y = mono(0, m), z = mono(0, n);
            if (x < 0 || y < 0 || z < 0)
                continue;
            c.add_term(x, y, z, 1, F);
        }
    return c;
}

}
