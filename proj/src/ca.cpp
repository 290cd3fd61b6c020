#include "ca.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace dcsim {

void CaConfig::validate() const {
    if (cellCount <= 0 || cellCount % 2 == 0) {
        throw std::invalid_argument("cellCount must be odd and positive");
    }
    if (radius < 1 || 2 * radius + 1 > cellCount) {
        throw std::invalid_argument("radius must satisfy 1 <= r and 2r+1 <= n");
    }
    if (haltEpsilon <= 0.0) {
        throw std::invalid_argument("haltEpsilon must be positive");
    }
    if (maxSteps < 0) {
        throw std::invalid_argument("maxSteps must be non-negative");
    }
}

double CaState::mean() const {
    double s = 0.0;
    for (double v : cells) s += v;
    return s / cells.size();
}

double CaState::range() const {
    auto [lo, hi] = std::minmax_element(cells.begin(), cells.end());
    return *hi - *lo;
}

CaState initCa(const Election& e) {
    if (e.size() == 0 || e.size() % 2 == 0) {
        throw std::invalid_argument("election size must be odd");
    }
    CaState s;
    s.cells.reserve(e.votes.size());
    for (Candidate v : e.votes) {
        s.cells.push_back(v == Candidate::Clanton ? 100.0 : 0.0);
    }
    return s;
}

namespace {

void caStepInto(const std::vector<double>& src, std::vector<double>& dst, int radius) {
    const int n = static_cast<int>(src.size());
    const int span = 2 * radius + 1;
    dst.resize(n);
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int d = -radius; d <= radius; ++d) {
            int j = i + d;
            if (j < 0) j += n;
            if (j >= n) j -= n;
            sum += src[j];
        }
        dst[i] = sum / span;
    }
}

}  // namespace

CaState caStep(const CaState& s, int radius) {
    CaState next;
    caStepInto(s.cells, next.cells, radius);
    return next;
}

CaRunResult caRun(const CaState& s0, const CaConfig& cfg,
                  const std::function<void(const CaState&, long long)>& observer,
                  long long observeEvery) {
    cfg.validate();
    if (static_cast<int>(s0.cells.size()) != cfg.cellCount) {
        throw std::invalid_argument("state size does not match config");
    }
    CaState state = s0;
    CaState buffer;
    CaRunResult result;
    if (observer) observer(state, 0);
    long long step = 0;
    double range = state.range();
    while (range >= cfg.haltEpsilon) {
        if (step >= cfg.maxSteps) {
            result.timedOut = true;
            break;
        }
        caStepInto(state.cells, buffer.cells, cfg.radius);
        state.cells.swap(buffer.cells);
        ++step;
        if (observer && step % observeEvery == 0) observer(state, step);
        range = state.range();
    }
    result.finalValue = state.mean();
    result.haltSteps = step;
    result.lastRange = range;
    return result;
}

MajorityResult caReadout(double finalValue) {
    if (!(finalValue >= 0.0 && finalValue <= 100.0)) {
        throw std::invalid_argument("finalValue must lie in [0, 100]");
    }
    if (finalValue == 50.0) {
        throw IndeterminateResultError("field stabilised exactly at 50");
    }
    MajorityResult r;
    r.winner = finalValue > 50.0 ? Candidate::Clanton : Candidate::Tramp;
    r.majorityPct = std::max(finalValue, 100.0 - finalValue);
    return r;
}

}  // namespace dcsim
