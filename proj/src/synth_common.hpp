// Internal helpers shared by the synthesizer implementations.
#ifndef PGB_SYNTH_COMMON_HPP
#define PGB_SYNTH_COMMON_HPP

#include <chrono>
#include <string>

#include "pgb/synthesizers.hpp"

namespace pgb::synth_detail {

class StageClock {
public:
    explicit StageClock(SynthesisRecord& record) : record_(record) {}

    void begin(std::string label) {
        label_ = std::move(label);
        start_ = std::chrono::steady_clock::now();
    }

    void end() {
        auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_);
        record_.stage_timings.push_back({label_, elapsed.count()});
    }

private:
    SynthesisRecord& record_;
    std::string label_;
    std::chrono::steady_clock::time_point start_;
};

} // namespace pgb::synth_detail

#endif
