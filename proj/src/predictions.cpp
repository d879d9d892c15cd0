#include "probmatrix/predictions.hpp"

#include <set>

#include "probmatrix/error.hpp"

namespace probmatrix {

std::vector<std::string> PredictionLog::models() const {
    std::set<std::string> s;
    for (const auto& [key, _] : groups) s.insert(key.model);
    return {s.begin(), s.end()};
}

std::vector<std::string> PredictionLog::datasets() const {
    std::set<std::string> s;
    for (const auto& [key, _] : groups) s.insert(key.dataset);
    return {s.begin(), s.end()};
}

PredictionLog group_records(const std::vector<PredictionRecord>& records) {
    std::map<SeriesKey, std::pair<std::vector<std::uint8_t>, std::vector<double>>> acc;
    for (const auto& r : records) {
        if (r.y != 0 && r.y != 1) throw InvalidInput("record label is not 0 or 1");
        auto& [ys, ps] = acc[SeriesKey{r.dataset, r.fold, r.model}];
        ys.push_back(static_cast<std::uint8_t>(r.y));
        ps.push_back(r.p);
    }
    PredictionLog log;
    for (auto& [key, v] : acc) {
        if (v.first.size() < 2) {
            throw InvalidInput("group (" + key.dataset + ", " + std::to_string(key.fold) + ", " + key.model +
                               ") has fewer than 2 records");
        }
        log.rows += v.first.size();
        log.groups.emplace(key, FoldSeries(std::move(v.first), std::move(v.second)));
    }
    return log;
}

}  // namespace probmatrix
