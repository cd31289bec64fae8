#include "cftrack/instance_classifier.hpp"

#include <stdexcept>

namespace cftrack {

SvmModel make_svm(double learn_rate, double reg, Eigen::Index length)
{
    if (!(learn_rate > 0.0) || !(reg >= 0.0))
        throw std::invalid_argument("SVM needs learn_rate > 0 and reg >= 0");
    SvmModel model;
    model.weights = Eigen::VectorXd::Zero(length);
    model.learn_rate = learn_rate;
    model.reg = reg;
    return model;
}

double margin(const SvmModel& model, const Eigen::VectorXd& feature)
{
    if (feature.size() != model.weights.size())
        throw std::invalid_argument("feature length does not match the SVM weights");
    return model.weights.dot(feature) + model.bias;
}

SvmModel update_one(SvmModel model, const Eigen::VectorXd& feature, int label)
{
    if (label != 1 && label != -1)
        throw std::invalid_argument("SVM labels are +1 or -1");
    const bool active = label * margin(model, feature) < 1.0;
    if (model.reg != 0.0)
        model.weights *= 1.0 - model.learn_rate * model.reg;
    if (active) {
        model.weights += model.learn_rate * label * feature;
        model.bias += model.learn_rate * label;
    }
    ++model.updates_seen;
    return model;
}

std::vector<Proposal> gate(const SvmModel& model, const std::vector<Candidate>& candidates, double threshold)
{
    std::vector<Proposal> kept;
    if (model.updates_seen == 0) {
        kept.reserve(candidates.size());
        for (const auto& c : candidates)
            kept.push_back(c.proposal);
        return kept;
    }

    std::size_t best = 0;
    double best_margin = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double m = margin(model, candidates[i].feature);
        if (m > threshold)
            kept.push_back(candidates[i].proposal);
        if (i == 0 || m > best_margin) {
            best = i;
            best_margin = m;
        }
    }
    if (kept.empty() && !candidates.empty())
        kept.push_back(candidates[best].proposal);
    return kept;
}

std::vector<TrainingSample> harvest_training_set(const Frame& frame, const BoundingBox& tracked,
                                                 const std::vector<Proposal>& proposals)
{
    if (!tracked.valid())
        throw std::invalid_argument("tracked box is degenerate");
    std::vector<TrainingSample> samples;
    samples.push_back({svm_feature_vector(frame, tracked), 1});

    std::vector<Proposal> ordered = proposals;
    sort_by_objectness(ordered);
    for (const auto& p : ordered) {
        if (samples.size() > kMaxNegatives)
            break;
        if (iou(p.box, tracked) < kNegativeIouLimit)
            samples.push_back({svm_feature_vector(frame, p.box), -1});
    }
    return samples;
}

}  // namespace cftrack
