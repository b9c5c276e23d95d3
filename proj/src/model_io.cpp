#include "mfrec/model_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "mfrec/errors.hpp"

namespace mfrec {

namespace {

using nlohmann::json;

json matrix_to_json(const DenseMatrix& m) {
    json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    j["values"] = m.values;
    return j;
}

DenseMatrix matrix_from_json(const json& j, const char* name) {
    DenseMatrix m;
    m.rows = j.at("rows").get<std::size_t>();
    m.cols = j.at("cols").get<std::size_t>();
    m.values = j.at("values").get<std::vector<double>>();
    if (m.values.size() != m.rows * m.cols)
        throw validation_error(std::string("model JSON: matrix '") + name +
                               "' has inconsistent dimensions");
    return m;
}

json fill_to_json(const FillStrategy& f) { return fill_name(f); }

FillStrategy fill_from_json(const json& j) { return fill_from_name(j.get<std::string>()); }

} // namespace

void save_model(std::ostream& out, const FactorModel& model) {
    json j;
    j["kind"] = model_kind(model);
    j["n_users"] = model_n_users(model);
    j["n_items"] = model_n_items(model);

    if (const auto* nmf = std::get_if<NmfModel>(&model)) {
        j["components"] = nmf->r;
        j["fill"] = fill_to_json(nmf->fill);
        j["seed"] = nmf->seed;
        j["iterations"] = nmf->iterations;
        j["objective_trace"] = nmf->objective_trace;
        j["w"] = matrix_to_json(nmf->w);
        j["h"] = matrix_to_json(nmf->h);
    } else if (const auto* svd = std::get_if<SvdModel>(&model)) {
        j["components"] = svd->k;
        j["fill"] = fill_to_json(svd->fill);
        j["u"] = matrix_to_json(svd->u);
        j["s"] = svd->s;
        j["vt"] = matrix_to_json(svd->vt);
    } else {
        const auto& sgd = std::get<SgdMfModel>(model);
        j["components"] = sgd.r;
        j["alpha"] = sgd.alpha;
        j["lambda"] = sgd.lambda;
        j["epochs"] = sgd.epochs;
        j["seed"] = sgd.seed;
        j["p"] = matrix_to_json(sgd.p);
        j["q"] = matrix_to_json(sgd.q);
    }
    out << j.dump(2) << '\n';
}

void save_model_file(const std::string& path, const FactorModel& model) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw validation_error("cannot open model file for writing: " + path);
    save_model(f, model);
}

FactorModel load_model(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw validation_error(std::string("model JSON parse failure: ") + ex.what());
    }

    try {
        const std::string kind = j.at("kind").get<std::string>();
        const std::size_t n_users = j.at("n_users").get<std::size_t>();
        const std::size_t n_items = j.at("n_items").get<std::size_t>();

        if (kind == "nmf") {
            NmfModel m;
            m.r = j.at("components").get<std::size_t>();
            m.fill = fill_from_json(j.at("fill"));
            m.seed = j.at("seed").get<std::uint64_t>();
            m.iterations = j.value("iterations", std::size_t{0});
            if (j.contains("objective_trace"))
                m.objective_trace = j["objective_trace"].get<std::vector<double>>();
            m.w = matrix_from_json(j.at("w"), "w");
            m.h = matrix_from_json(j.at("h"), "h");
            if (m.w.rows != n_users || m.w.cols != m.r || m.h.rows != m.r ||
                m.h.cols != n_items)
                throw validation_error("model JSON: nmf factor dimensions do not match");
            return m;
        }
        if (kind == "svd") {
            SvdModel m;
            m.k = j.at("components").get<std::size_t>();
            m.fill = fill_from_json(j.at("fill"));
            m.u = matrix_from_json(j.at("u"), "u");
            m.s = j.at("s").get<std::vector<double>>();
            m.vt = matrix_from_json(j.at("vt"), "vt");
            if (m.u.rows != n_users || m.u.cols != m.k || m.s.size() != m.k ||
                m.vt.rows != m.k || m.vt.cols != n_items)
                throw validation_error("model JSON: svd factor dimensions do not match");
            return m;
        }
        if (kind == "sgd_mf") {
            SgdMfModel m;
            m.r = j.at("components").get<std::size_t>();
            m.alpha = j.at("alpha").get<double>();
            m.lambda = j.at("lambda").get<double>();
            m.epochs = j.at("epochs").get<std::size_t>();
            m.seed = j.at("seed").get<std::uint64_t>();
            m.p = matrix_from_json(j.at("p"), "p");
            m.q = matrix_from_json(j.at("q"), "q");
            if (m.p.rows != n_users || m.p.cols != m.r || m.q.rows != m.r ||
                m.q.cols != n_items)
                throw validation_error("model JSON: sgd factor dimensions do not match");
            return m;
        }
        throw validation_error("model JSON: unknown kind '" + kind + "'");
    } catch (const json::exception& ex) {
        throw validation_error(std::string("model JSON: ") + ex.what());
    }
}

FactorModel load_model_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw validation_error("cannot open model file: " + path);
    return load_model(f);
}

} // namespace mfrec
