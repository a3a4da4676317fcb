#pragma once

#include "mdlcausa/codecs.hpp"
#include "mdlcausa/dag.hpp"
#include "mdlcausa/distributions.hpp"
#include "mdlcausa/error.hpp"
#include "mdlcausa/inference.hpp"
#include "mdlcausa/infotheory.hpp"
#include "mdlcausa/lab.hpp"
#include "mdlcausa/random.hpp"
