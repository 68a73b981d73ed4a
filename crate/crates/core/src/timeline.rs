//! Time-segment algebra, speaker annotations, and RTTM/UEM parsing.
//!
//! All times are seconds as `f64`. Comparisons go through a fixed epsilon
//! ([`TIME_EPS`]); serialization quantizes to milliseconds.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

/// Epsilon for all segment time comparisons.
pub const TIME_EPS: f64 = 1e-6;

/// `a` strictly before `b` under the shared epsilon.
#[inline]
pub fn time_lt(a: f64, b: f64) -> bool {
    a < b - TIME_EPS
}

/// `a` equals `b` under the shared epsilon.
#[inline]
pub fn time_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIME_EPS
}

#[derive(Debug, Error, PartialEq)]
pub enum TimelineError {
    #[error("line {0}: malformed line")]
    MalformedLine(usize),
    #[error("line {0}: non-positive duration")]
    NegativeDuration(usize),
    #[error("recording {0:?} missing from the evaluation map")]
    UnknownRecording(String),
}

/// A half-open time interval `[onset, onset + duration)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    onset: f64,
    duration: f64,
}

impl Segment {
    /// Panics on non-finite times, negative onset, or non-positive duration.
    pub fn new(onset: f64, duration: f64) -> Self {
        assert!(
            onset.is_finite() && duration.is_finite() && onset >= 0.0 && duration > 0.0,
            "invalid segment [{onset}, {onset} + {duration})"
        );
        Self { onset, duration }
    }

    /// Builds `[onset, offset)`; returns `None` when the span is empty.
    pub fn from_bounds(onset: f64, offset: f64) -> Option<Self> {
        if time_lt(onset, offset) && onset >= 0.0 {
            Some(Self::new(onset, offset - onset))
        } else {
            None
        }
    }

    pub fn onset(&self) -> f64 {
        self.onset
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    /// End of the interval (`onset + duration`).
    pub fn offset(&self) -> f64 {
        self.onset + self.duration
    }

    /// Midpoint of the interval.
    pub fn mid(&self) -> f64 {
        self.onset + 0.5 * self.duration
    }

    /// `true` when `t` lies inside `[onset, offset)` under the epsilon.
    pub fn contains(&self, t: f64) -> bool {
        t >= self.onset - TIME_EPS && time_lt(t, self.offset())
    }

    /// Intersection with `other`, `None` when empty.
    pub fn intersect(&self, other: &Segment) -> Option<Segment> {
        Segment::from_bounds(
            self.onset.max(other.onset),
            self.offset().min(other.offset()),
        )
    }

    fn sort_key(&self) -> (f64, f64) {
        (self.onset, self.duration)
    }
}

fn cmp_key(a: (f64, f64), b: (f64, f64)) -> std::cmp::Ordering {
    a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1))
}

/// An ordered set of segments for one recording. Overlap is allowed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Timeline {
    pub recording_id: String,
    segments: Vec<Segment>,
}

impl Timeline {
    pub fn new(recording_id: impl Into<String>) -> Self {
        Self {
            recording_id: recording_id.into(),
            segments: Vec::new(),
        }
    }

    pub fn from_segments(recording_id: impl Into<String>, mut segments: Vec<Segment>) -> Self {
        segments.sort_by(|a, b| cmp_key(a.sort_key(), b.sort_key()));
        Self {
            recording_id: recording_id.into(),
            segments,
        }
    }

    pub fn push(&mut self, segment: Segment) {
        let pos = self
            .segments
            .partition_point(|s| cmp_key(s.sort_key(), segment.sort_key()).is_le());
        self.segments.insert(pos, segment);
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Sum of segment durations (overlap counted multiply).
    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(Segment::duration).sum()
    }

    /// Merges segments whose inter-gap is strictly below `gap`; touching and
    /// overlapping segments always merge (union semantics). The output is
    /// sorted and non-overlapping. Idempotent for a fixed gap.
    pub fn support(&self, gap: f64) -> Timeline {
        assert!(gap >= 0.0, "gap must be non-negative");
        let mut merged: Vec<Segment> = Vec::new();
        for seg in &self.segments {
            let joinable = |last: &Segment| {
                let inter_gap = seg.onset - last.offset();
                time_lt(inter_gap, gap) || inter_gap <= TIME_EPS
            };
            match merged.last_mut() {
                Some(last) if joinable(last) => {
                    let end = last.offset().max(seg.offset());
                    last.duration = end - last.onset;
                }
                _ => merged.push(*seg),
            }
        }
        Timeline {
            recording_id: self.recording_id.clone(),
            segments: merged,
        }
    }

    /// Intersection with another timeline (both treated as unions of intervals).
    pub fn intersect(&self, other: &Timeline) -> Timeline {
        let a = self.support(0.0);
        let b = other.support(0.0);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.segments.len() && j < b.segments.len() {
            let (sa, sb) = (&a.segments[i], &b.segments[j]);
            if let Some(seg) = sa.intersect(sb) {
                out.push(seg);
            }
            if sa.offset() <= sb.offset() {
                i += 1;
            } else {
                j += 1;
            }
        }
        Timeline {
            recording_id: self.recording_id.clone(),
            segments: out,
        }
    }

    /// Set difference `self \ other`.
    pub fn subtract(&self, other: &Timeline) -> Timeline {
        let holes = other.support(0.0);
        let mut out = Vec::new();
        for seg in self.support(0.0).segments {
            let mut cursor = seg.onset;
            for hole in holes
                .segments
                .iter()
                .filter(|h| h.offset() > seg.onset && h.onset < seg.offset())
            {
                if let Some(piece) = Segment::from_bounds(cursor, hole.onset.min(seg.offset())) {
                    out.push(piece);
                }
                cursor = cursor.max(hole.offset());
            }
            if let Some(piece) = Segment::from_bounds(cursor, seg.offset()) {
                out.push(piece);
            }
        }
        Timeline {
            recording_id: self.recording_id.clone(),
            segments: out,
        }
    }

    /// Converts per-frame flags into a timeline of maximal `true` runs, with
    /// frame `t` covering `[t*step, (t+1)*step)`.
    pub fn from_flags(recording_id: impl Into<String>, flags: &[bool], step: f64) -> Timeline {
        let mut segments = Vec::new();
        let mut run_start = None;
        for (t, &on) in flags.iter().enumerate() {
            match (on, run_start) {
                (true, None) => run_start = Some(t),
                (false, Some(s)) => {
                    segments.push(Segment::new(s as f64 * step, (t - s) as f64 * step));
                    run_start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = run_start {
            segments.push(Segment::new(s as f64 * step, (flags.len() - s) as f64 * step));
        }
        Timeline {
            recording_id: recording_id.into(),
            segments,
        }
    }

    /// Per-frame view: frame `t` is `true` when its center `(t + 0.5)*step`
    /// falls inside a segment.
    pub fn to_flags(&self, step: f64, n_frames: usize) -> Vec<bool> {
        let mut flags = vec![false; n_frames];
        for seg in &self.segments {
            let lo = ((seg.onset / step - 0.5).ceil().max(0.0)) as usize;
            for (t, flag) in flags.iter_mut().enumerate().skip(lo) {
                let center = (t as f64 + 0.5) * step;
                if center >= seg.offset() - TIME_EPS {
                    break;
                }
                if seg.contains(center) {
                    *flag = true;
                }
            }
        }
        flags
    }
}

/// One labeled entry of an annotation.
#[derive(Debug, Clone, PartialEq)]
pub struct Turn {
    pub segment: Segment,
    pub speaker: String,
}

/// Speaker-labeled time segments for one recording. Simultaneous speakers
/// are permitted (overlapped speech).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Annotation {
    pub recording_id: String,
    turns: Vec<Turn>,
}

impl Annotation {
    pub fn new(recording_id: impl Into<String>) -> Self {
        Self {
            recording_id: recording_id.into(),
            turns: Vec::new(),
        }
    }

    pub fn from_turns(recording_id: impl Into<String>, mut turns: Vec<Turn>) -> Self {
        turns.sort_by(|a, b| {
            cmp_key(a.segment.sort_key(), b.segment.sort_key()).then_with(|| a.speaker.cmp(&b.speaker))
        });
        Self {
            recording_id: recording_id.into(),
            turns,
        }
    }

    pub fn push(&mut self, segment: Segment, speaker: impl Into<String>) {
        let speaker = speaker.into();
        debug_assert!(
            !speaker.is_empty() && !speaker.contains(char::is_whitespace),
            "speaker labels must be non-empty and whitespace-free"
        );
        let key = segment.sort_key();
        let pos = self.turns.partition_point(|t| {
            cmp_key(t.segment.sort_key(), key)
                .then_with(|| t.speaker.as_str().cmp(&speaker))
                .is_le()
        });
        self.turns.insert(pos, Turn { segment, speaker });
    }

    pub fn turns(&self) -> &[Turn] {
        &self.turns
    }

    pub fn is_empty(&self) -> bool {
        self.turns.is_empty()
    }

    /// Distinct speakers in first-appearance order.
    pub fn speakers(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for turn in &self.turns {
            if !seen.contains(&turn.speaker.as_str()) {
                seen.push(turn.speaker.as_str());
            }
        }
        seen
    }

    /// All segments of one speaker.
    pub fn speaker_timeline(&self, speaker: &str) -> Timeline {
        Timeline::from_segments(
            self.recording_id.clone(),
            self.turns
                .iter()
                .filter(|t| t.speaker == speaker)
                .map(|t| t.segment)
                .collect(),
        )
    }

    /// Union of all labeled segments.
    pub fn support(&self) -> Timeline {
        Timeline::from_segments(
            self.recording_id.clone(),
            self.turns.iter().map(|t| t.segment).collect(),
        )
        .support(0.0)
    }

    /// Total labeled speaker time (overlap counted multiply).
    pub fn total_speaker_time(&self) -> f64 {
        self.turns.iter().map(|t| t.segment.duration()).sum()
    }

    /// Restricts every entry to the recording's scoring regions; entries with
    /// an empty intersection are dropped, entries spanning region gaps split.
    pub fn crop(&self, regions: &UemMap) -> Result<Annotation, TimelineError> {
        let timeline = regions
            .get(&self.recording_id)
            .ok_or_else(|| TimelineError::UnknownRecording(self.recording_id.clone()))?;
        let mut out = Annotation::new(self.recording_id.clone());
        for turn in &self.turns {
            for region in timeline.segments() {
                if let Some(piece) = turn.segment.intersect(region) {
                    out.push(piece, turn.speaker.clone());
                }
            }
        }
        Ok(out)
    }

    /// Maximal regions where at least two distinct speakers are active.
    pub fn overlap_regions(&self) -> Timeline {
        #[derive(Clone, Copy)]
        struct Event {
            time: f64,
            speaker: usize,
            delta: i64,
        }
        let speakers = self.speakers();
        let index_of = |name: &str| speakers.iter().position(|s| *s == name).unwrap();
        let mut events: Vec<Event> = Vec::with_capacity(self.turns.len() * 2);
        for turn in &self.turns {
            let speaker = index_of(&turn.speaker);
            events.push(Event {
                time: turn.segment.onset(),
                speaker,
                delta: 1,
            });
            events.push(Event {
                time: turn.segment.offset(),
                speaker,
                delta: -1,
            });
        }
        events.sort_by(|a, b| a.time.total_cmp(&b.time));

        let mut counts = vec![0i64; speakers.len()];
        let mut active = 0usize;
        let mut out = Timeline::new(self.recording_id.clone());
        let mut i = 0;
        while i < events.len() {
            let t = events[i].time;
            while i < events.len() && events[i].time == t {
                let ev = events[i];
                let before = counts[ev.speaker] > 0;
                counts[ev.speaker] += ev.delta;
                let after = counts[ev.speaker] > 0;
                match (before, after) {
                    (false, true) => active += 1,
                    (true, false) => active -= 1,
                    _ => {}
                }
                i += 1;
            }
            if active >= 2 && i < events.len() {
                if let Some(seg) = Segment::from_bounds(t, events[i].time) {
                    out.push(seg);
                }
            }
        }
        out.support(0.0)
    }

    /// Frame-level activity: cell `(t, s)` is set when speaker `s` is active
    /// at the frame center `(t + 0.5)*step`. Columns follow first-appearance
    /// speaker order.
    pub fn discretize(&self, step: f64, n_frames: usize) -> FrameActivity {
        assert!(step > 0.0, "step must be positive");
        let speakers: Vec<String> = self.speakers().into_iter().map(str::to_owned).collect();
        let mut flags = vec![false; n_frames * speakers.len().max(1)];
        if !speakers.is_empty() {
            for turn in &self.turns {
                let s = speakers.iter().position(|x| *x == turn.speaker).unwrap();
                let lo = ((turn.segment.onset() / step - 0.5).ceil().max(0.0)) as usize;
                for t in lo..n_frames {
                    let center = (t as f64 + 0.5) * step;
                    if center >= turn.segment.offset() - TIME_EPS {
                        break;
                    }
                    if turn.segment.contains(center) {
                        flags[t * speakers.len() + s] = true;
                    }
                }
            }
        }
        FrameActivity {
            speakers,
            n_frames,
            flags,
        }
    }
}

/// Binary frame × speaker activity matrix produced by [`Annotation::discretize`].
#[derive(Debug, Clone)]
pub struct FrameActivity {
    pub speakers: Vec<String>,
    pub n_frames: usize,
    flags: Vec<bool>,
}

impl FrameActivity {
    pub fn is_active(&self, frame: usize, speaker: usize) -> bool {
        self.flags[frame * self.speakers.len() + speaker]
    }

    /// Number of active speakers in a frame.
    pub fn active_count(&self, frame: usize) -> usize {
        let w = self.speakers.len();
        self.flags[frame * w..(frame + 1) * w]
            .iter()
            .filter(|&&x| x)
            .count()
    }

    /// Per-frame speech mask (any speaker active).
    pub fn speech_mask(&self) -> Vec<bool> {
        (0..self.n_frames).map(|t| self.active_count(t) >= 1).collect()
    }

    /// Per-frame overlap mask (two or more speakers active).
    pub fn overlap_mask(&self) -> Vec<bool> {
        (0..self.n_frames).map(|t| self.active_count(t) >= 2).collect()
    }
}

/// Per-recording scoring regions, normalized to non-overlapping segments.
#[derive(Debug, Clone, Default)]
pub struct UemMap {
    regions: BTreeMap<String, Timeline>,
}

impl UemMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts (or extends) the scoring regions of one recording.
    pub fn insert(&mut self, timeline: Timeline) {
        let entry = self
            .regions
            .entry(timeline.recording_id.clone())
            .or_insert_with(|| Timeline::new(timeline.recording_id.clone()));
        for seg in timeline.segments() {
            entry.push(*seg);
        }
        *entry = entry.support(0.0);
    }

    /// Convenience: a single `[0, duration)` region per recording.
    pub fn covering(recordings: &[(&str, f64)]) -> Self {
        let mut map = Self::new();
        for (rec, duration) in recordings {
            map.insert(Timeline::from_segments(
                *rec,
                vec![Segment::new(0.0, *duration)],
            ));
        }
        map
    }

    pub fn get(&self, recording_id: &str) -> Option<&Timeline> {
        self.regions.get(recording_id)
    }

    pub fn recordings(&self) -> impl Iterator<Item = &str> {
        self.regions.keys().map(String::as_str)
    }
}

/// Parses an RTTM document into one annotation per recording id, in
/// first-appearance order.
pub fn rttm_parse(text: &str) -> Result<Vec<Annotation>, TimelineError> {
    let mut order: Vec<String> = Vec::new();
    let mut by_rec: BTreeMap<String, Vec<Turn>> = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 10 || fields[0] != "SPEAKER" {
            return Err(TimelineError::MalformedLine(line_no));
        }
        let onset: f64 = fields[3]
            .parse()
            .map_err(|_| TimelineError::MalformedLine(line_no))?;
        let duration: f64 = fields[4]
            .parse()
            .map_err(|_| TimelineError::MalformedLine(line_no))?;
        if !onset.is_finite() || onset < 0.0 || !duration.is_finite() {
            return Err(TimelineError::MalformedLine(line_no));
        }
        if duration <= 0.0 {
            return Err(TimelineError::NegativeDuration(line_no));
        }
        let rec = fields[1].to_owned();
        if !by_rec.contains_key(&rec) {
            order.push(rec.clone());
        }
        by_rec.entry(rec).or_default().push(Turn {
            segment: Segment::new(onset, duration),
            speaker: fields[7].to_owned(),
        });
    }
    Ok(order
        .into_iter()
        .map(|rec| {
            let turns = by_rec.remove(&rec).unwrap();
            Annotation::from_turns(rec, turns)
        })
        .collect())
}

/// Serializes one annotation as RTTM; onset and duration carry exactly three
/// decimals, the channel field is always `1`.
pub fn rttm_emit(annotation: &Annotation) -> String {
    let mut out = String::new();
    for turn in annotation.turns() {
        writeln!(
            out,
            "SPEAKER {} 1 {:.3} {:.3} <NA> <NA> {} <NA> <NA>",
            annotation.recording_id,
            turn.segment.onset(),
            turn.segment.duration(),
            turn.speaker
        )
        .unwrap();
    }
    out
}

pub fn rttm_emit_all(annotations: &[Annotation]) -> String {
    annotations.iter().map(rttm_emit).collect()
}

/// Parses a UEM document: `recording_id channel onset offset` per line.
pub fn uem_parse(text: &str) -> Result<UemMap, TimelineError> {
    let mut map = UemMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(TimelineError::MalformedLine(line_no));
        }
        let onset: f64 = fields[2]
            .parse()
            .map_err(|_| TimelineError::MalformedLine(line_no))?;
        let offset: f64 = fields[3]
            .parse()
            .map_err(|_| TimelineError::MalformedLine(line_no))?;
        if !onset.is_finite() || !offset.is_finite() || onset < 0.0 {
            return Err(TimelineError::MalformedLine(line_no));
        }
        if offset <= onset {
            return Err(TimelineError::NegativeDuration(line_no));
        }
        map.insert(Timeline::from_segments(
            fields[0],
            vec![Segment::new(onset, offset - onset)],
        ));
    }
    Ok(map)
}

/// Serializes a UEM map, one `recording_id 1 onset offset` line per region.
pub fn uem_emit(map: &UemMap) -> String {
    let mut out = String::new();
    for rec in map.recordings() {
        for seg in map.get(rec).unwrap().segments() {
            writeln!(out, "{} 1 {:.3} {:.3}", rec, seg.onset(), seg.offset()).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ann(entries: &[(f64, f64, &str)]) -> Annotation {
        let mut a = Annotation::new("rec1");
        for (onset, dur, spk) in entries {
            a.push(Segment::new(*onset, *dur), *spk);
        }
        a
    }

    #[test]
    fn rttm_parse_single_line() {
        let anns = rttm_parse("SPEAKER rec1 1 0.500 2.000 <NA> <NA> spkA <NA> <NA>").unwrap();
        assert_eq!(anns.len(), 1);
        assert_eq!(anns[0].recording_id, "rec1");
        let turn = &anns[0].turns()[0];
        assert_eq!(turn.speaker, "spkA");
        assert!(time_eq(turn.segment.onset(), 0.5));
        assert!(time_eq(turn.segment.offset(), 2.5));
    }

    #[test]
    fn rttm_parse_keeps_overlapping_entries_sorted() {
        let text = "SPEAKER rec1 1 2.000 3.000 <NA> <NA> spkB <NA> <NA>\n\
                    SPEAKER rec1 1 1.000 4.000 <NA> <NA> spkA <NA> <NA>\n";
        let anns = rttm_parse(text).unwrap();
        assert_eq!(anns[0].turns().len(), 2);
        assert_eq!(anns[0].turns()[0].speaker, "spkA");
        assert_eq!(anns[0].turns()[1].speaker, "spkB");
    }

    #[test]
    fn rttm_parse_rejects_nine_fields() {
        let err = rttm_parse("SPEAKER rec1 1 0.500 2.000 <NA> <NA> spkA <NA>").unwrap_err();
        assert_eq!(err, TimelineError::MalformedLine(1));
    }

    #[test]
    fn rttm_parse_rejects_negative_duration() {
        let err = rttm_parse("SPEAKER rec1 1 0.500 -2.000 <NA> <NA> spkA <NA> <NA>").unwrap_err();
        assert_eq!(err, TimelineError::NegativeDuration(1));
    }

    #[test]
    fn rttm_emit_formats_three_decimals() {
        let a = ann(&[(0.5, 2.0, "spkA")]);
        assert_eq!(
            rttm_emit(&a),
            "SPEAKER rec1 1 0.500 2.000 <NA> <NA> spkA <NA> <NA>\n"
        );
    }

    #[test]
    fn rttm_emit_empty_annotation() {
        assert_eq!(rttm_emit(&Annotation::new("rec1")), "");
    }

    #[test]
    fn crop_to_single_region() {
        let a = ann(&[(0.0, 10.0, "spkA")]);
        let uem = UemMap::covering(&[("rec1", 100.0)]);
        assert_eq!(a.crop(&uem).unwrap(), a);

        let mut narrow = UemMap::new();
        narrow.insert(Timeline::from_segments("rec1", vec![Segment::new(2.0, 2.0)]));
        let cropped = a.crop(&narrow).unwrap();
        assert_eq!(cropped.turns().len(), 1);
        assert!(time_eq(cropped.turns()[0].segment.onset(), 2.0));
        assert!(time_eq(cropped.turns()[0].segment.offset(), 4.0));
    }

    #[test]
    fn crop_splits_across_gaps_and_drops_outside() {
        let a = ann(&[(0.0, 10.0, "spkA"), (20.0, 1.0, "spkB")]);
        let mut uem = UemMap::new();
        uem.insert(Timeline::from_segments(
            "rec1",
            vec![Segment::new(2.0, 2.0), Segment::new(6.0, 2.0)],
        ));
        let cropped = a.crop(&uem).unwrap();
        let spans: Vec<(f64, f64)> = cropped
            .turns()
            .iter()
            .map(|t| (t.segment.onset(), t.segment.offset()))
            .collect();
        assert_eq!(spans.len(), 2);
        assert!(time_eq(spans[0].0, 2.0) && time_eq(spans[0].1, 4.0));
        assert!(time_eq(spans[1].0, 6.0) && time_eq(spans[1].1, 8.0));
        assert!(cropped.turns().iter().all(|t| t.speaker == "spkA"));
    }

    #[test]
    fn crop_unknown_recording() {
        let a = ann(&[(0.0, 1.0, "spkA")]);
        let uem = UemMap::covering(&[("other", 10.0)]);
        assert_eq!(
            a.crop(&uem).unwrap_err(),
            TimelineError::UnknownRecording("rec1".into())
        );
    }

    #[test]
    fn support_merges_by_gap() {
        let t = Timeline::from_segments(
            "rec1",
            vec![Segment::new(0.0, 1.0), Segment::new(1.2, 0.8)],
        );
        let merged = t.support(0.5);
        assert_eq!(merged.segments().len(), 1);
        assert!(time_eq(merged.segments()[0].offset(), 2.0));

        let kept = t.support(0.1);
        assert_eq!(kept.segments().len(), 2);
    }

    #[test]
    fn support_unions_overlap_at_gap_zero() {
        let t = Timeline::from_segments(
            "rec1",
            vec![Segment::new(0.0, 2.0), Segment::new(1.0, 2.0)],
        );
        let merged = t.support(0.0);
        assert_eq!(merged.segments().len(), 1);
        assert!(time_eq(merged.segments()[0].onset(), 0.0));
        assert!(time_eq(merged.segments()[0].offset(), 3.0));
    }

    #[test]
    fn support_idempotent() {
        let t = Timeline::from_segments(
            "rec1",
            vec![
                Segment::new(0.0, 1.0),
                Segment::new(1.3, 1.0),
                Segment::new(5.0, 0.2),
            ],
        );
        let once = t.support(0.4);
        let twice = once.support(0.4);
        assert_eq!(once, twice);
    }

    #[test]
    fn overlap_regions_pairwise() {
        let a = ann(&[(0.0, 10.0, "A"), (5.0, 3.0, "B")]);
        let t = a.overlap_regions();
        assert_eq!(t.segments().len(), 1);
        assert!(time_eq(t.segments()[0].onset(), 5.0));
        assert!(time_eq(t.segments()[0].offset(), 8.0));
    }

    #[test]
    fn overlap_regions_single_speaker_empty() {
        let a = ann(&[(0.0, 10.0, "A")]);
        assert!(a.overlap_regions().is_empty());
        // The same speaker twice does not make an overlap.
        let twice = ann(&[(0.0, 10.0, "A"), (2.0, 3.0, "A")]);
        assert!(twice.overlap_regions().is_empty());
    }

    #[test]
    fn overlap_regions_three_speakers() {
        // A@[0,6), B@[2,8), C@[4,5) -> at least two active over [2,6).
        let a = ann(&[(0.0, 6.0, "A"), (2.0, 6.0, "B"), (4.0, 1.0, "C")]);
        let t = a.overlap_regions();
        assert_eq!(t.segments().len(), 1);
        assert!(time_eq(t.segments()[0].onset(), 2.0));
        assert!(time_eq(t.segments()[0].offset(), 6.0));
    }

    #[test]
    fn discretize_frame_centers() {
        let a = ann(&[(0.0, 1.0, "A")]);
        let act = a.discretize(0.5, 4);
        assert_eq!(act.speakers, vec!["A".to_string()]);
        let col: Vec<bool> = (0..4).map(|t| act.is_active(t, 0)).collect();
        assert_eq!(col, vec![true, true, false, false]);
    }

    #[test]
    fn discretize_empty_annotation_all_zero() {
        let a = Annotation::new("rec1");
        let act = a.discretize(0.5, 4);
        assert!(act.speakers.is_empty());
        assert!((0..4).all(|t| act.active_count(t) == 0));
    }

    #[test]
    fn discretize_overlap_has_two_flags() {
        let a = ann(&[(0.0, 2.0, "A"), (0.5, 1.0, "B")]);
        let act = a.discretize(1.0, 2);
        assert_eq!(act.active_count(0), 2);
        assert_eq!(act.active_count(1), 1);
    }

    #[test]
    fn overlap_empty_iff_discretize_rows_below_two() {
        let a = ann(&[(0.0, 1.0, "A"), (1.0, 1.0, "B"), (3.0, 1.0, "A")]);
        assert!(a.overlap_regions().is_empty());
        let act = a.discretize(0.1, 45);
        assert!((0..45).all(|t| act.active_count(t) <= 1));
    }

    #[test]
    fn uem_roundtrip() {
        let text = "rec1 1 0.000 60.000\nrec2 1 5.000 15.000\nrec2 1 20.000 30.000\n";
        let map = uem_parse(text).unwrap();
        assert_eq!(uem_emit(&map), text);
    }

    #[test]
    fn timeline_subtract() {
        let a = Timeline::from_segments("r", vec![Segment::new(0.0, 10.0)]);
        let b = Timeline::from_segments("r", vec![Segment::new(2.0, 2.0), Segment::new(9.0, 5.0)]);
        let d = a.subtract(&b);
        let spans: Vec<(f64, f64)> = d.segments().iter().map(|s| (s.onset(), s.offset())).collect();
        assert_eq!(spans.len(), 2);
        assert!(time_eq(spans[0].0, 0.0) && time_eq(spans[0].1, 2.0));
        assert!(time_eq(spans[1].0, 4.0) && time_eq(spans[1].1, 9.0));
    }

    #[test]
    fn flags_roundtrip_runs() {
        let flags = vec![false, true, true, false, true];
        let t = Timeline::from_flags("r", &flags, 0.5);
        assert_eq!(t.segments().len(), 2);
        assert_eq!(t.to_flags(0.5, 5), flags);
    }
}
