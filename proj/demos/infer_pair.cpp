// Draws one discrete additive-noise pair and prints both codelengths.

#include <cstdio>
#include <vector>

#include "mdlcausa/mdlcausa.hpp"

int main() {
  using namespace mdlcausa;

  const CategoricalDistribution cause({0.1, 0.4, 0.3, 0.2});
  const CategoricalDistribution noise({0.8, 0.1, 0.05, 0.05});
  const std::vector<int> f{0, 1, 2, 3};
  const JointTable joint = discrete_anm(4, 4, f, noise, cause);
  const PairedSample data = sample(joint, 5000, /*seed=*/7);

  for (const CodecKind& codec : {CodecKind{CrudeTwoPart{}}, CodecKind{Nml{}}}) {
    const DirectionScore s = infer_direction(data, 0, 1, {codec});
    std::printf("%-5s L(X->Y) = %.3f bits  L(Y->X) = %.3f bits  -> %s\n", codec_name(codec).c_str(), s.l_xy,
                s.l_yx, std::string(direction_label(s.decision)).c_str());
  }
  std::printf("H(X,Y) = %.6f bits/sample\n", joint_entropy(joint));
}
