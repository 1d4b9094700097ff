#ifndef NOMA_MEC_NOMA_MEC_HPP
#define NOMA_MEC_NOMA_MEC_HPP

#include "noma_mec/campaign.hpp"
#include "noma_mec/closed_form.hpp"
#include "noma_mec/format.hpp"
#include "noma_mec/golden_section.hpp"
#include "noma_mec/model.hpp"
#include "noma_mec/oracle.hpp"
#include "noma_mec/splitmix64.hpp"
#include "noma_mec/sweep.hpp"

#endif  // NOMA_MEC_NOMA_MEC_HPP
