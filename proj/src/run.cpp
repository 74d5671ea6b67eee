#include "ctvol/run.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>
#include <vector>

#include "ctvol/errors.hpp"
#include "ctvol/io.hpp"
#include "ctvol/oracles.hpp"
#include "ctvol/polytope.hpp"
#include "ctvol/simpcone.hpp"
#include "ctvol/volume.hpp"

namespace ctvol {

namespace {

const char* const kMethodOrder[] = {"simpcone", "lawrence", "triangulation",
                                    "fulldim-brion", "ehrhart-oracle"};

bool knownMethod(const std::string& m)
{
    for (const char* name : kMethodOrder)
        if (m == name)
            return true;
    return m == "all";
}

/** Report-level rational format: always numerator/denominator. */
std::string volumeString(const Rational& q)
{
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string approxString(const Rational& q)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", q.convert_to<double>());
    return std::string("~") + buf;
}

std::string betaString(const VectorXz& beta)
{
    std::string s;
    for (Eigen::Index i = 0; i < beta.size(); ++i) {
        if (i)
            s += ",";
        s += beta(i).str();
    }
    return s;
}

/** Lazily derived views of the loaded (and dilated) input. */
class Workspace {
public:
    Workspace(LoadedPolytope poly, const Integer& dilate) : poly_(std::move(poly))
    {
        if (dilate != 1) {
            if (auto* p = std::get_if<PolytopeStd>(&poly_))
                poly_ = p->dilate(dilate);
            else if (auto* h = std::get_if<PolytopeH>(&poly_))
                poly_ = h->dilate(dilate);
            else
                std::get<PolytopeV>(poly_).vertices *= Rational(dilate);
        }
    }

    std::string kind() const { return kindName(poly_); }

    int dimension() const
    {
        if (const auto* p = std::get_if<PolytopeStd>(&poly_))
            return p->d();
        if (const auto* h = std::get_if<PolytopeH>(&poly_))
            return h->d();
        return static_cast<int>(std::get<PolytopeV>(poly_).vertices.rows());
    }

    const PolytopeStd& asStd()
    {
        if (!stdForm_) {
            if (const auto* p = std::get_if<PolytopeStd>(&poly_))
                stdForm_ = *p;
            else if (const auto* h = std::get_if<PolytopeH>(&poly_))
                stdForm_ = stdFromH(*h);
            else
                throw PreconditionError(
                    "this method needs an equation-form or inequality-form input");
        }
        return *stdForm_;
    }

    const PolytopeH& asH()
    {
        if (const auto* h = std::get_if<PolytopeH>(&poly_))
            return *h;
        throw PreconditionError("this method needs an inequality-form input");
    }

    const PolytopeV& asPlanarV()
    {
        if (!vForm_) {
            if (const auto* v = std::get_if<PolytopeV>(&poly_)) {
                if (v->vertices.rows() != 2)
                    throw PreconditionError("triangulation handles planar vertex sets only");
                vForm_ = *v;
            } else if (const auto* h = std::get_if<PolytopeH>(&poly_)) {
                if (h->d() != 2)
                    throw PreconditionError(
                        "triangulation of inequality-form inputs is planar only");
                VertexEnumeration ve = verticesOfH(*h);
                PolytopeV v;
                v.vertices = MatrixXr(2, static_cast<Eigen::Index>(ve.vertices.size()));
                for (std::size_t i = 0; i < ve.vertices.size(); ++i)
                    v.vertices.col(static_cast<Eigen::Index>(i)) = ve.vertices[i].v;
                vForm_ = std::move(v);
            } else {
                throw PreconditionError("triangulation needs a vertex or inequality input");
            }
        }
        return *vForm_;
    }

private:
    LoadedPolytope poly_;
    std::optional<PolytopeStd> stdForm_;
    std::optional<PolytopeV> vForm_;
};

struct MethodOutcome {
    Rational value;
    std::optional<VectorXz> beta;
    std::optional<int> coneCount;
};

MethodOutcome runMethod(const std::string& method, Workspace& ws, const RunConfig& cfg)
{
    MethodOutcome out;
    if (method == "simpcone") {
        const PolytopeStd& p = ws.asStd();
        Decomposition dec = simpcone(coneOver(p).b());
        VectorXz beta = cfg.beta ? *cfg.beta : sampleBeta(p.n(), dec.cones, cfg.seed);
        VolumeResult res = volumeSimpcone(p, dec, beta);
        if (!cfg.emitDecomposition.empty())
            saveDecomposition(dec, cfg.emitDecomposition);
        out.value = res.value;
        out.beta = beta;
        out.coneCount = res.coneCount;
    } else if (method == "lawrence") {
        const PolytopeH& h = ws.asH();
        VolumeResult res = cfg.beta ? volumeLawrence(h, *cfg.beta)
                                    : volumeLawrenceSeeded(h, cfg.seed);
        out.value = res.value;
        out.beta = res.beta;
        out.coneCount = res.coneCount;
    } else if (method == "fulldim-brion") {
        const PolytopeH& h = ws.asH();
        VolumeResult res;
        if (cfg.beta) {
            std::vector<SignedCone> cones = supportingConesSimple(h);
            if (!isAdmissible(*cfg.beta, cones))
                throw InadmissibleBetaError(
                    "the given beta pairs to zero against a supporting-cone edge");
            res = volumeFulldim(cones, h.d(), *cfg.beta);
        } else {
            res = volumeBrion(h, cfg.seed);
        }
        out.value = res.value;
        out.beta = res.beta;
        out.coneCount = res.coneCount;
    } else if (method == "triangulation") {
        VolumeResult res = volumeTriangulation(fanTriangulatePolygon(ws.asPlanarV()));
        out.value = res.value;
        out.coneCount = res.coneCount;
    } else if (method == "ehrhart-oracle") {
        out.value = ehrhartVolume(ws.asStd());
    } else {
        throw PreconditionError("unknown method: " + method);
    }
    return out;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto start = std::chrono::steady_clock::now();
    auto wallMs = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    };

    if (!knownMethod(cfg.method)) {
        err << "error: unknown method \"" << cfg.method
            << "\" (expected simpcone, lawrence, triangulation, fulldim-brion, "
               "ehrhart-oracle, or all)\n";
        return 2;
    }
    if (cfg.dilate < 1) {
        err << "error: dilation factor must be a positive integer\n";
        return 2;
    }
    if (cfg.beta && cfg.method == "all") {
        err << "error: an explicit beta applies to a single method; the per-method "
               "lengths differ under method = all\n";
        return 2;
    }
    if (!cfg.emitDecomposition.empty() && cfg.method != "simpcone" && cfg.method != "all") {
        err << "error: --emit-decomposition requires the simpcone method to run\n";
        return 2;
    }

    std::optional<Workspace> ws;
    try {
        ws.emplace(loadPolytope(cfg.input), cfg.dilate);
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    std::ostringstream report;
    report << "input: " << cfg.input << "\n";
    report << "kind: " << ws->kind() << "\n";
    report << "dimension: " << ws->dimension() << "\n";
    report << "method: " << cfg.method << "\n";

    std::optional<Rational> volume;
    std::optional<VectorXz> beta;
    std::optional<int> coneCount;
    std::string status = "ok";
    int exitCode = 0;

    if (cfg.method == "all") {
        std::vector<Rational> values;
        bool simpconeRan = false;
        for (const char* name : kMethodOrder) {
            try {
                MethodOutcome mo = runMethod(name, *ws, cfg);
                report << name << ": " << volumeString(mo.value) << "\n";
                values.push_back(mo.value);
                if (std::string(name) == "simpcone")
                    simpconeRan = true;
            } catch (const std::runtime_error& e) {
                report << name << ": skipped (" << e.what() << ")\n";
            }
        }
        if (!cfg.emitDecomposition.empty() && !simpconeRan) {
            err << "error: --emit-decomposition requires the simpcone method to run\n";
            return 2;
        }
        if (values.empty()) {
            report << "verdict: NONE\n";
            status = "error";
            exitCode = 1;
        } else {
            bool agree = true;
            for (const Rational& v : values)
                agree = agree && v == values.front();
            report << "verdict: " << (agree ? "AGREE" : "DISAGREE") << "\n";
            if (agree) {
                volume = values.front();
            } else {
                status = "disagreement";
                exitCode = 1;
            }
        }
    } else {
        try {
            MethodOutcome mo = runMethod(cfg.method, *ws, cfg);
            volume = mo.value;
            beta = mo.beta;
            coneCount = mo.coneCount;
        } catch (const std::runtime_error& e) {
            err << "error: " << e.what() << "\n";
            return 1;
        }
    }

    if (volume) {
        report << "volume: " << volumeString(*volume) << "\n";
        report << "volume_approx: " << approxString(*volume) << "\n";
    }
    if (beta)
        report << "beta: " << betaString(*beta) << "\n";
    if (coneCount)
        report << "cones: " << *coneCount << "\n";

    if (cfg.verify && exitCode == 0) {
        try {
            Rational oracle = ehrhartVolume(ws->asStd());
            report << "oracle: " << volumeString(oracle) << "\n";
            bool match = volume && *volume == oracle;
            report << "oracle_match: " << (match ? "yes" : "no") << "\n";
            if (!match) {
                status = "oracle-mismatch";
                exitCode = 1;
            }
        } catch (const std::runtime_error& e) {
            err << "error: " << e.what() << "\n";
            return 1;
        }
    }

    report << "status: " << status << "\n";
    report << "wall_ms: " << wallMs() << "\n";
    out << report.str();
    return exitCode;
}

}  // namespace ctvol
