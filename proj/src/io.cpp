#include "ctvol/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ctvol/errors.hpp"

namespace ctvol {

namespace {

using nlohmann::json;

std::string readFile(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parseJson(const std::string& text, const std::string& context)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(context + ": " + e.what());
    }
}

const json& field(const json& obj, const char* name, const std::string& context)
{
    if (!obj.is_object() || !obj.contains(name))
        throw ParseError(context + ": missing field \"" + name + "\"");
    return obj.at(name);
}

Rational rationalValue(const json& v, const std::string& where)
{
    if (v.is_number_integer())
        return Rational(Integer(v.get<long long>()));
    if (v.is_string())
        return parseRational(v.get<std::string>(), where);
    throw ParseError(where + ": expected an integer or a \"p/q\" string, never a float");
}

Integer integerValue(const json& v, const std::string& where)
{
    Rational q = rationalValue(v, where);
    if (denominator(q) != 1)
        throw ParseError(where + ": expected an integer, got " + toString(q));
    return numerator(q);
}

template <typename Scalar, typename Reader>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> readMatrix(const json& v,
                                                                 const std::string& where,
                                                                 const Reader& read)
{
    if (!v.is_array() || v.empty())
        throw ParseError(where + ": expected a nonempty array of rows");
    const std::size_t rows = v.size();
    std::size_t cols = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = v[i];
        if (!row.is_array() || row.empty())
            throw ParseError(where + ": row " + std::to_string(i) +
                             " is not a nonempty array");
        if (i == 0)
            cols = row.size();
        else if (row.size() != cols)
            throw ParseError(where + ": row " + std::to_string(i) + " has " +
                             std::to_string(row.size()) + " entries, expected " +
                             std::to_string(cols));
    }
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                read(v[i][j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    return m;
}

template <typename Scalar, typename Reader>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> readVector(const json& v, const std::string& where,
                                                    const Reader& read)
{
    if (!v.is_array() || v.empty())
        throw ParseError(where + ": expected a nonempty array");
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = read(v[i], where + "[" + std::to_string(i) + "]");
    return out;
}

}  // namespace

std::string kindName(const LoadedPolytope& p)
{
    switch (p.index()) {
        case 0: return "std";
        case 1: return "hrep";
        default: return "vrep";
    }
}

LoadedPolytope parsePolytope(const std::string& text, const std::string& context)
{
    json doc = parseJson(text, context);
    const json& kindField = field(doc, "kind", context);
    if (!kindField.is_string())
        throw ParseError(context + ": field \"kind\" must be a string");
    const std::string kind = kindField.get<std::string>();

    if (kind == "std") {
        MatrixXz a = readMatrix<Integer>(field(doc, "A", context), context + ".A",
                                         integerValue);
        VectorXz b = readVector<Integer>(field(doc, "b", context), context + ".b",
                                         integerValue);
        if (b.size() != a.rows())
            throw ParseError(context + ": b has " + std::to_string(b.size()) +
                             " entries, A has " + std::to_string(a.rows()) + " rows");
        return PolytopeStd(std::move(a), std::move(b));
    }
    if (kind == "hrep") {
        MatrixXr a = readMatrix<Rational>(field(doc, "Aprime", context), context + ".Aprime",
                                          rationalValue);
        VectorXr b = readVector<Rational>(field(doc, "bprime", context), context + ".bprime",
                                          rationalValue);
        if (b.size() != a.rows())
            throw ParseError(context + ": bprime has " + std::to_string(b.size()) +
                             " entries, Aprime has " + std::to_string(a.rows()) + " rows");
        return PolytopeH(std::move(a), std::move(b));
    }
    if (kind == "vrep") {
        MatrixXr pts = readMatrix<Rational>(field(doc, "vertices", context),
                                            context + ".vertices", rationalValue);
        PolytopeV v;
        v.vertices = pts.transpose();   // file lists points as rows; columns internally
        return v;
    }
    throw ParseError(context + ": unknown kind \"" + kind + "\" (expected std, hrep, or vrep)");
}

LoadedPolytope loadPolytope(const std::string& path)
{
    return parsePolytope(readFile(path), path);
}

std::string decompositionToJson(const Decomposition& dec)
{
    json cones = json::array();
    for (const SignedCone& c : dec.cones) {
        json gens = json::array();
        for (Eigen::Index i = 0; i < c.generators.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < c.generators.cols(); ++j)
                row.push_back(toString(c.generators(i, j)));
            gens.push_back(std::move(row));
        }
        json cone;
        cone["sign"] = c.sign;
        cone["generators"] = std::move(gens);
        if (c.pivotProduct)
            cone["pivot_product"] = toString(*c.pivotProduct);
        else
            cone["pivot_product"] = nullptr;
        cones.push_back(std::move(cone));
    }
    json doc;
    doc["n"] = dec.n;
    doc["r"] = dec.r;
    doc["invariant_factor_product"] = dec.invariantFactorProduct.str();
    doc["cones"] = std::move(cones);
    return doc.dump(2) + "\n";
}

void saveDecomposition(const Decomposition& dec, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot open file for writing: " + path);
    out << decompositionToJson(dec);
    if (!out)
        throw ParseError("write failed: " + path);
}

Decomposition parseDecomposition(const std::string& text, const std::string& context)
{
    json doc = parseJson(text, context);
    Decomposition dec;
    dec.n = static_cast<int>(integerValue(field(doc, "n", context), context + ".n"));
    dec.r = static_cast<int>(integerValue(field(doc, "r", context), context + ".r"));
    dec.invariantFactorProduct =
        integerValue(field(doc, "invariant_factor_product", context),
                     context + ".invariant_factor_product");
    const json& cones = field(doc, "cones", context);
    if (!cones.is_array())
        throw ParseError(context + ": field \"cones\" must be an array");
    for (std::size_t i = 0; i < cones.size(); ++i) {
        const std::string where = context + ".cones[" + std::to_string(i) + "]";
        const json& entry = cones[i];
        SignedCone cone;
        cone.sign = static_cast<int>(integerValue(field(entry, "sign", where),
                                                  where + ".sign"));
        cone.generators = readMatrix<Rational>(field(entry, "generators", where),
                                               where + ".generators", rationalValue);
        const json& pp = field(entry, "pivot_product", where);
        if (!pp.is_null())
            cone.pivotProduct = rationalValue(pp, where + ".pivot_product");
        dec.cones.push_back(std::move(cone));
    }
    return dec;
}

Decomposition loadDecomposition(const std::string& path)
{
    return parseDecomposition(readFile(path), path);
}

}  // namespace ctvol
