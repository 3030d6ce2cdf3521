import pytest

import socnet

MATRIX = ",A,B,C\nA,0,0.37,0\nB,0.37,0,0.5\nC,0,0.5,0\n"


def test_iou():
    assert socnet.iou([0, 0, 10, 10], [5, 0, 10, 10]) == pytest.approx(1 / 3)
    with pytest.raises(ValueError):
        socnet.iou([0, 0, 0, 10], [0, 0, 1, 1])


def test_average_precision_hand_case():
    preds = [[0, 0, 10, 10, 0.9], [100, 100, 10, 10, 0.8], [20, 0, 10, 10, 0.7]]
    gts = [[0, 0, 10, 10], [20, 0, 10, 10]]
    assert socnet.average_precision(preds, gts, method="exact") == pytest.approx(0.5 + 0.5 * 2 / 3)


def test_association_matrix_worked_example():
    ledger = "video_id,present\n" + "".join(
        f"v{k},\"{','.join(names)}\"\n"
        for k, names in enumerate([["A", "B"], ["A", "B"], ["A"], ["A"], ["A"], ["B"], ["B"]])
    )
    text = socnet.association_matrix(ledger)
    assert text.splitlines()[1] == "A,0,0.2857142857142857"


def test_network_report():
    r = socnet.network_report(MATRIX)
    assert r["density"] == pytest.approx(2 / 3)
    assert [i["degree"] for i in r["individuals"]] == [1, 2, 1]
    with pytest.raises(socnet.ConvergenceError):
        socnet.network_report(MATRIX, config="network.eigen_max_iter = 1\nnetwork.eigen_tol = 1e-15\n")
    with pytest.raises(ValueError):
        socnet.network_report(",A,B\nA,0,2\nB,2,0\n")


def test_layout_is_seeded():
    a = socnet.layout(MATRIX, 3)
    assert a == socnet.layout(MATRIX, 3)
    assert a["svg"].count("<circle") == 3
    assert a["dot"].count(" -- ") == 2


def test_zero_noise_pipeline_matches_oracle():
    s = socnet.synth(42, "synth.n_videos = 24\nsynth.n_frames = 6\n")
    out = socnet.pipeline(s["detections"], seed=1, roster=s["roster"], config="jobs = 2\n")
    assert out["matrix"] == s["oracle_matrix"]
    assert out["ledger"] == s["ledger"]
    assert len(out["report"]["individuals"]) == 12


def test_track_and_topk():
    det = "".join(
        f'{{"frame_index":{f},"detections":[{{"bbox":[0,0,10,10],"score":0.9,"class_scores":{{"A":0.8,"B":0.2}}}}]}}\n'
        for f in range(10)
    )
    tracks = socnet.track(det, "v1")
    assert '"name":"A"' in tracks
    samples = '{"true_label":"B","class_scores":{"A":0.8,"B":0.2}}\n'
    assert socnet.topk_accuracy(samples, 1) == 0.0
    assert socnet.topk_accuracy(samples, 2) == 1.0
