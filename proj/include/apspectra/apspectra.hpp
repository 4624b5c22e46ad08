#pragma once

#include "apspectra/core/character.hpp"
#include "apspectra/core/error.hpp"
#include "apspectra/core/mean.hpp"
#include "apspectra/core/parallel.hpp"
#include "apspectra/core/schedule.hpp"
#include "apspectra/core/seminorm.hpp"
#include "apspectra/core/track.hpp"
#include "apspectra/systems/alphabet.hpp"
#include "apspectra/systems/metric.hpp"
#include "apspectra/systems/observable.hpp"
#include "apspectra/systems/point.hpp"
#include "apspectra/systems/presets.hpp"
#include "apspectra/almostper/averaged_metric.hpp"
#include "apspectra/almostper/classify.hpp"
#include "apspectra/almostper/scan.hpp"
#include "apspectra/spectral/detect.hpp"
#include "apspectra/spectral/eigen.hpp"
#include "apspectra/spectral/fourier_bohr.hpp"
#include "apspectra/spectral/parseval.hpp"
#include "apspectra/spectral/report.hpp"
#include "apspectra/diffraction/autocorrelation.hpp"
#include "apspectra/diffraction/bridge.hpp"
#include "apspectra/diffraction/comb.hpp"
#include "apspectra/diffraction/density.hpp"
