#include "harmfrob/relations.hpp"

#include <atomic>
#include <chrono>
#include <thread>

namespace hf {

nlohmann::json Report::to_json(bool timing) const {
    nlohmann::json j;
    j["name"] = name;
    j["params"] = params;
    if (exact_zero) j["defect_valuation"] = "exact zero";
    else j["defect_valuation"] = defect_valuation;
    j["threshold"] = threshold;
    j["pass"] = pass;
    j["millis"] = timing ? millis : 0;
    if (status != "ok") j["status"] = status;
    if (!note.empty()) j["note"] = note;
    if (!details.is_null()) j["details"] = details;
    return j;
}

std::string reports_json(const std::vector<Report>& reports, bool timing) {
    nlohmann::json a = nlohmann::json::array();
    for (auto& r : reports) a.push_back(r.to_json(timing));
    return a.dump(2) + "\n";
}

std::vector<Report> run_jobs(const std::vector<std::function<Report()>>& jobs, unsigned threads) {
    std::vector<Report> out(jobs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < jobs.size(); i = next++) {
            auto t0 = std::chrono::steady_clock::now();
            try {
                out[i] = jobs[i]();
            } catch (const std::exception& e) {
                out[i] = Report{};
                out[i].name = "job-" + std::to_string(i);
                out[i].status = "parameter-error";
                out[i].note = e.what();
            }
            auto dt = std::chrono::steady_clock::now() - t0;
            out[i].millis = std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
    if (threads == 1) {
        worker();
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace hf
