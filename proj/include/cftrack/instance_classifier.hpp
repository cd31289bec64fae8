#ifndef CFTRACK_INSTANCE_CLASSIFIER_HPP
#define CFTRACK_INSTANCE_CLASSIFIER_HPP

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cftrack/features.hpp"
#include "cftrack/proposals.hpp"

namespace cftrack {

/// Online linear SVM trained by hinge-loss subgradient steps.
struct SvmModel
{
    Eigen::VectorXd weights = Eigen::VectorXd::Zero(kSvmFeatureLength);
    double bias = 0.0;
    double learn_rate = 0.01;
    double reg = 1e-4;
    long updates_seen = 0;

    bool operator==(const SvmModel& o) const
    {
        return weights.size() == o.weights.size() && weights == o.weights && bias == o.bias &&
               learn_rate == o.learn_rate && reg == o.reg && updates_seen == o.updates_seen;
    }
};

SvmModel make_svm(double learn_rate, double reg, Eigen::Index length = kSvmFeatureLength);

double margin(const SvmModel& model, const Eigen::VectorXd& feature);

/// One step on reg/2 |w|^2 + hinge(label * margin). `label` must be +1 or -1.
SvmModel update_one(SvmModel model, const Eigen::VectorXd& feature, int label);

struct Candidate
{
    Proposal proposal;
    Eigen::VectorXd feature;
};

/// Keeps candidates with margin > threshold. An untrained model passes
/// everything; if nothing passes, the single best-margin candidate is kept.
std::vector<Proposal> gate(const SvmModel& model, const std::vector<Candidate>& candidates,
                           double threshold = 0.0);

struct TrainingSample
{
    Eigen::VectorXd feature;
    int label = 1;
};

constexpr double kNegativeIouLimit = 0.3;
constexpr std::size_t kMaxNegatives = 10;

/// One positive at `tracked` followed by up to kMaxNegatives negatives from
/// proposals with IoU below kNegativeIouLimit, highest objectness first.
std::vector<TrainingSample> harvest_training_set(const Frame& frame, const BoundingBox& tracked,
                                                 const std::vector<Proposal>& proposals);

}  // namespace cftrack

#endif
