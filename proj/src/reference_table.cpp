#include "gels/reference_table.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "gels/errors.hpp"

namespace gels {

namespace {

double criterion_with(int n_p, double loglik, std::size_t n, bool aic) {
    const auto ic = information_criteria(n_p, loglik, n);
    return aic ? ic.aic : ic.sic;
}

}  // namespace

const ReferenceRow* ReferenceTable::find(const std::string& model) const {
    for (const auto& r : rows)
        if (r.model == model) return &r;
    return nullptr;
}

std::map<std::string, ReferenceTable> load_reference_tables(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open reference table " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("reference table " + path.string() + ": " + e.what());
    }
    std::map<std::string, ReferenceTable> out;
    try {
        for (const auto& [key, entry] : doc.at("datasets").items()) {
            ReferenceTable t;
            t.dataset = key;
            t.n = entry.at("n").get<std::size_t>();
            t.note = entry.value("note", "");
            for (const auto& r : entry.at("rows"))
                t.rows.push_back({r.at("model").get<std::string>(), r.at("n_p").get<int>(),
                                  r.at("aic").get<double>(), r.at("sic").get<double>()});
            out.emplace(key, std::move(t));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError("reference table " + path.string() + ": " + e.what());
    }
    return out;
}

std::vector<std::string> reference_aliases(CompetitorFamily family) {
    switch (family) {
        case CompetitorFamily::lognormal2: return {"Log-normal"};
        case CompetitorFamily::gamma: return {"Gamma"};
        case CompetitorFamily::weibull: return {"Weibull", "W"};
        case CompetitorFamily::gen_exponential: return {"GE", "EE"};
    }
    return {};
}

ModelComparison compare_models(const Dataset& data, const FitResult& gels_fit,
                               const std::vector<CompetitorFit>& competitors, const ReferenceTable* reference) {
    ModelComparison cmp;
    cmp.dataset = data.name();
    cmp.n = data.size();

    ComparisonRow g;
    g.model = "GEL-S (k=" + std::to_string(gels_fit.k) + ")";
    g.origin = "fitted";
    g.n_p = kGelSFreeParameters;
    g.loglik = gels_fit.loglik;
    g.aic = gels_fit.aic;
    g.sic = gels_fit.sic;
    cmp.rows.push_back(g);

    std::vector<std::string> consumed{"GEL-S"};
    for (const auto& c : competitors) {
        ComparisonRow row;
        row.model = to_string(c.family);
        row.origin = "fitted";
        row.n_p = c.n_p;
        row.loglik = c.loglik;
        row.aic = c.aic;
        row.sic = c.sic;
        if (!c.converged) cmp.notes.push_back(row.model + ": optimizer did not converge");
        if (reference) {
            for (const auto& alias : reference_aliases(c.family)) {
                const ReferenceRow* ref = reference->find(alias);
                if (!ref) continue;
                row.published_n_p = ref->n_p;
                row.aic_published_n_p = criterion_with(ref->n_p, c.loglik, data.size(), true);
                row.sic_published_n_p = criterion_with(ref->n_p, c.loglik, data.size(), false);
                if (ref->n_p != c.n_p)
                    cmp.notes.push_back(row.model + ": published row '" + alias + "' counts n_p = " +
                                        std::to_string(ref->n_p) + "; the refitted family has " +
                                        std::to_string(c.n_p) + " parameters");
                if (c.family != CompetitorFamily::lognormal2) consumed.push_back(alias);
                break;
            }
        }
        cmp.rows.push_back(row);
    }

    if (reference) {
        if (reference->n != data.size())
            cmp.notes.push_back("reference table '" + reference->dataset + "' is for n = " +
                                std::to_string(reference->n) + ", data has n = " + std::to_string(data.size()));
        for (const auto& ref : reference->rows) {
            if (std::find(consumed.begin(), consumed.end(), ref.model) != consumed.end()) continue;
            ComparisonRow row;
            row.model = ref.model == "Log-normal" ? "Log-normal (published)" : ref.model;
            row.origin = "reference";
            row.n_p = ref.n_p;
            row.aic = ref.aic;
            row.sic = ref.sic;
            cmp.rows.push_back(row);
        }
    }

    auto argmin = [&](auto value) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < cmp.rows.size(); ++i)
            if (value(cmp.rows[i]) < value(cmp.rows[best])) best = i;
        return best;
    };
    cmp.best_aic = argmin([](const ComparisonRow& r) { return r.aic; });
    cmp.best_sic = argmin([](const ComparisonRow& r) { return r.sic; });
    cmp.best_aic_published = argmin([](const ComparisonRow& r) { return r.aic_published_n_p.value_or(r.aic); });
    cmp.best_sic_published = argmin([](const ComparisonRow& r) { return r.sic_published_n_p.value_or(r.sic); });
    return cmp;
}

}  // namespace gels
